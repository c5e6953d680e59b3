#pragma once

// Radiality of m-invariant functions restricted to a root space.
//
// Functions on G/K are modeled through the point map g -> p = g Theta(g)^-1,
// which for Theta(g) = (g^T)^-1 is p = g g^T. The shipped invariant kinds
// are conjugation invariants of p and hence left-K-invariant; `probe` reads a
// single entry of p and is not, which makes it a negative control.

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "rootscope/error.hpp"
#include "rootscope/model.hpp"
#include "rootscope/numkit.hpp"
#include "rootscope/report.hpp"
#include "rootscope/sampling.hpp"

namespace rootscope {

enum class FunctionKind { trace_p, trace_p2, trace_p_inv, probe };

inline std::string_view to_string(FunctionKind kind) {
  switch (kind) {
    case FunctionKind::trace_p: return "trace_p";
    case FunctionKind::trace_p2: return "trace_p2";
    case FunctionKind::trace_p_inv: return "trace_p_inv";
    case FunctionKind::probe: return "probe";
  }
  return "unknown";
}

inline FunctionKind parse_function_kind(std::string_view text) {
  for (auto k : {FunctionKind::trace_p, FunctionKind::trace_p2, FunctionKind::trace_p_inv, FunctionKind::probe})
    if (to_string(k) == text) return k;
  throw Error(ErrorCode::InvalidParams, "unknown function kind '" + std::string(text) + "'");
}

/// p = g Theta(g)^-1 = g g^T.
inline Mat point_model(const Mat& g) { return g * g.transpose(); }

/// F(g) = phi(g Theta(g)^-1).
inline double evaluate(FunctionKind kind, const Mat& g) {
  const Mat p = point_model(g);
  switch (kind) {
    case FunctionKind::trace_p: return p.trace();
    case FunctionKind::trace_p2: return (p * p).trace();
    case FunctionKind::trace_p_inv: return inverse(p).trace();
    case FunctionKind::probe: return p(0, std::min<std::size_t>(2, p.cols() - 1));
  }
  return 0.0;
}

/// f_lambda(X) = F(exp(X)).
inline double f_lambda(const Model& model, FunctionKind kind, std::size_t root, std::span<const double> x,
                       double tol = tolerances::residual) {
  const Root& r = model.datum.root(root);
  const double n = model.cartan.norm(x);
  if (n > 0.0 && residual_norm(r.space, x) > tol * n)
    throw Error(ErrorCode::NotInRootSpace, "argument of f_lambda is not in the root space");
  return evaluate(kind, expm(model.algebra.realize(x)));
}

/// Central difference of t -> F(exp(-t Xm) g) at t = 0, for Xm in m.
inline double fundamental_derivative(const Model& model, FunctionKind kind, std::span<const double> xm, const Mat& g,
                                     double h = 1e-5, double tol = tolerances::residual) {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidParams, "step must be positive");
  const double n = model.cartan.norm(xm);
  if (n == 0.0) return 0.0;
  if (residual_norm(model.datum.m_frame, xm) > tol * n)
    throw Error(ErrorCode::MembershipFailure, "generator is not in m");
  const Mat m = model.algebra.realize(xm);
  return (evaluate(kind, expm(m * -h) * g) - evaluate(kind, expm(m * h) * g)) / (2.0 * h);
}

struct RadialityOptions {
  double h = 1e-5;
  double tol_fd = 1e-6;  // relative to 1 + |F|
  double min_radius = 0.1;
  double max_radius = 2.0;
};

/// Compares f_lambda on equal-norm pairs and checks that its derivative
/// vanishes along every direction [Y, M], M in m. Throws MultiplicityTooSmall.
inline Report radiality_check(const Model& model, FunctionKind kind, std::size_t root, std::size_t samples,
                              double tol = 1e-8, std::uint64_t seed = 42, const RadialityOptions& opt = {}) {
  const Root& r = model.datum.root(root);
  const std::size_t mult = r.multiplicity();
  if (mult < 2) throw Error(ErrorCode::MultiplicityTooSmall, "radiality needs a root of multiplicity >= 2");

  double max_delta = 0.0, max_tangent = 0.0;
  const std::string tag = "radiality/" + std::string(to_string(kind));
  for (std::size_t s = 0; s < samples; ++s) {
    Rng rng = trial_rng(seed, stream_id(tag, root), s);
    Vec cx = gaussian_vector(rng, mult);
    cx = scaled(cx, 1.0 / norm(cx));

    // random rotation of the coefficient vector
    std::vector<Vec> cols;
    for (std::size_t k = 0; k < mult; ++k) cols.push_back(gaussian_vector(rng, mult));
    const Mat rot = orthonormalize(cols, mult).matrix();
    const Vec cy = rot * cx;

    const double radius = uniform(rng, opt.min_radius, opt.max_radius);
    const Vec x = scaled(r.space.combine(cx), radius);
    const Vec y = scaled(r.space.combine(cy), radius);
    const double fy = f_lambda(model, kind, root, y);
    max_delta = std::max(max_delta, std::abs(f_lambda(model, kind, root, x) - fy));

    for (const auto& m : model.datum.m_frame) {
      const Vec dir = model.algebra.bracket(y, m);
      const double fd = (f_lambda(model, kind, root, add(y, scaled(dir, opt.h))) -
                         f_lambda(model, kind, root, add(y, scaled(dir, -opt.h)))) /
                        (2.0 * opt.h);
      max_tangent = std::max(max_tangent, std::abs(fd) / (1.0 + std::abs(fy)));
    }
  }

  const std::string kind_name(to_string(kind));
  Report report;
  report.add({"radiality", model.datum.algebra, r.covector, samples, max_delta, tol, max_delta < tol, seed, kind_name,
              max_delta});
  report.add({"radiality_tangential", model.datum.algebra, r.covector, samples, max_tangent, opt.tol_fd,
              max_tangent < opt.tol_fd, seed, kind_name, std::nullopt});
  return report;
}

/// The probe must visibly fail radiality; passes iff max delta > threshold.
inline Report negative_control(const Model& model, std::size_t root, std::size_t samples, std::uint64_t seed = 42,
                               double threshold = 1e-3) {
  const Report probe = radiality_check(model, FunctionKind::probe, root, samples, 1e-8, seed);
  CheckResult e = probe.entries.front();
  e.check = "radiality_negative_control";
  e.tol = threshold;
  e.pass = *e.max_delta > threshold;
  Report report;
  report.add(e);
  return report;
}

/// |F(k g) - F(g)| and |F(g k) - F(g)| for k = exp(k-element), g = exp(p-element).
inline Report k_invariance_check(const Model& model, FunctionKind kind, std::size_t samples, double tol = 1e-10,
                                 std::uint64_t seed = 42) {
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    Rng rng = trial_rng(seed, stream_id("k_invariance/" + std::string(to_string(kind))), s);
    const Mat k = expm(model.algebra.realize(random_in_ball(model.cartan.k_frame(), rng, 1.0)));
    const Mat g = expm(model.algebra.realize(random_in_ball(model.cartan.p_frame(), rng, 1.0)));
    const double f = evaluate(kind, g);
    worst = std::max({worst, std::abs(evaluate(kind, k * g) - f), std::abs(evaluate(kind, g * k) - f)});
  }
  Report report;
  report.add({"k_invariance", model.datum.algebra, std::nullopt, samples, worst, tol, worst < tol, seed,
              std::string(to_string(kind)), std::nullopt});
  return report;
}

/// |X* F| at g = exp(root-space element) for random X in m.
inline Report fundamental_derivative_check(const Model& model, FunctionKind kind, std::size_t samples,
                                           double tol = 1e-6, std::uint64_t seed = 42, double h = 1e-5) {
  double worst = 0.0;
  std::size_t taken = 0;
  if (!model.datum.m_frame.empty()) {
    for (std::size_t s = 0; s < samples; ++s) {
      Rng rng = trial_rng(seed, stream_id("fundamental/" + std::string(to_string(kind))), s);
      const std::size_t root = std::uniform_int_distribution<std::size_t>(0, model.datum.roots.size() - 1)(rng);
      const Vec xm = random_unit(model.datum.m_frame, rng);
      const Vec y = scaled(random_unit(model.datum.root(root).space, rng), uniform(rng, 0.1, 2.0));
      const Mat g = expm(model.algebra.realize(y));
      worst = std::max(worst, std::abs(fundamental_derivative(model, kind, xm, g, h)));
      ++taken;
    }
  }
  Report report;
  report.add({"fundamental_derivative", model.datum.algebra, std::nullopt, taken, worst, tol, worst < tol, seed,
              std::string(to_string(kind)), std::nullopt});
  return report;
}

}  // namespace rootscope
