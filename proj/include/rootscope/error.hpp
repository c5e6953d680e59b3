#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rootscope {

enum class ErrorCode {
  DimensionMismatch,
  NonFinite,
  NonSymmetric,
  NoConvergence,
  GramNotPD,
  NotPD,
  Singular,
  NotOrthonormal,
  DependentBasis,
  NotClosed,
  Degenerate,
  NotInvolution,
  NotAutomorphism,
  NotCartan,
  InvalidParams,
  MaximalityFailure,
  NotInGroup,
  GenericityFailure,
  ClusterAmbiguity,
  GramSingular,
  DecompositionFailure,
  NotInRootSpace,
  MembershipFailure,
  ZeroVector,
  NotPerp,
  IdentityFailure,
  MultiplicityTooSmall,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NonSymmetric: return "NonSymmetric";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::GramNotPD: return "GramNotPD";
    case ErrorCode::NotPD: return "NotPD";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::DependentBasis: return "DependentBasis";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::NotInvolution: return "NotInvolution";
    case ErrorCode::NotAutomorphism: return "NotAutomorphism";
    case ErrorCode::NotCartan: return "NotCartan";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::MaximalityFailure: return "MaximalityFailure";
    case ErrorCode::NotInGroup: return "NotInGroup";
    case ErrorCode::GenericityFailure: return "GenericityFailure";
    case ErrorCode::ClusterAmbiguity: return "ClusterAmbiguity";
    case ErrorCode::GramSingular: return "GramSingular";
    case ErrorCode::DecompositionFailure: return "DecompositionFailure";
    case ErrorCode::NotInRootSpace: return "NotInRootSpace";
    case ErrorCode::MembershipFailure: return "MembershipFailure";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::NotPerp: return "NotPerp";
    case ErrorCode::IdentityFailure: return "IdentityFailure";
    case ErrorCode::MultiplicityTooSmall: return "MultiplicityTooSmall";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-checkable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rootscope
