#pragma once

// Numerical checks of the identities satisfied by a restricted root space
// g_lambda:
//
//   [X, sigma X] = beta(X, sigma X) H_lambda                       (rank-one bracket)
//   [X, sigma Y] - beta(X, sigma Y) H_lambda  lies in m            (m-component)
//   [m, X] = X^perp inside g_lambda, so g_lambda = R X + [m, X]     (orthogonal split)
//
// plus a constructive replay that, given X' orthogonal to X, produces the
// element M of m with [M, X] = X'.
//
// Norms are beta_sigma norms throughout. Bracket order: the witness M
// satisfies [M, X] = X' (not [X, M] = X').

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rootscope/error.hpp"
#include "rootscope/liealg.hpp"
#include "rootscope/numkit.hpp"
#include "rootscope/report.hpp"
#include "rootscope/rootspace.hpp"
#include "rootscope/sampling.hpp"

namespace rootscope {

namespace detail {

inline double relative(double num, double den) { return den > 0.0 ? num / den : num; }

inline void require_in_space(const CartanData& C, const Root& root, std::span<const double> x, double tol,
                             const char* what) {
  const double n = C.norm(x);
  if (n == 0.0) return;
  const double miss = residual_norm(root.space, x) / n;
  if (miss > tol)
    throw Error(ErrorCode::NotInRootSpace, std::string(what) + " is not in the root space (relative residual " +
                                               std::to_string(miss) + ")");
}

// Rank and membership decisions in sampled reports; the caller's tolerance
// is only the pass threshold there.
inline double structural(double tol) { return std::max(tol, 1e-12); }

inline void require_nonzero(const CartanData& C, std::span<const double> x) {
  if (C.norm(x) <= 1e-12) throw Error(ErrorCode::ZeroVector, "root vector must be nonzero");
}

inline CheckResult root_entry(std::string name, const RootDatum& datum, const Root& root, std::size_t trials,
                              double worst, double tol, std::uint64_t seed) {
  return {std::move(name), datum.algebra, root.covector, trials, worst, tol, worst < tol, seed, {}, {}};
}

}  // namespace detail

/// |[X, sigma X] - beta(X, sigma X) H_lambda| / (1 + |X|^2). Throws NotInRootSpace.
inline double verify_relation1(const LieAlgebra& L, const CartanData& C, const RootDatum& datum, std::size_t root,
                               std::span<const double> x, double tol = tolerances::residual) {
  const Root& r = datum.root(root);
  detail::require_in_space(C, r, x, tol, "X");
  const Vec sx = C.apply_sigma(x);
  const Vec lhs = L.bracket(x, sx);
  const Vec rhs = scaled(r.coroot, L.killing_form(x, sx));
  const double n = C.norm(x);
  return C.norm(sub(lhs, rhs)) / (1.0 + n * n);
}

struct MComponent {
  Vec w;                        // [X, sigma Y] - beta(X, sigma Y) H_lambda
  double membership = 0.0;      // distance of w from m, relative
  double orthogonality = 0.0;   // max_i |beta(w, A_i)|, relative
};

/// Non-throwing core of m_component; residuals are scaled by 1 + |X||Y|.
inline MComponent m_component_residuals(const LieAlgebra& L, const CartanData& C, const RootDatum& datum,
                                        std::size_t root, std::span<const double> x, std::span<const double> y) {
  const Root& r = datum.root(root);
  const Vec sy = C.apply_sigma(y);
  MComponent out;
  out.w = sub(L.bracket(x, sy), scaled(r.coroot, L.killing_form(x, sy)));
  const double scale = 1.0 + C.norm(x) * C.norm(y);
  out.membership = residual_norm(datum.m_frame, out.w) / scale;
  for (const auto& a : C.a_frame())
    out.orthogonality = std::max(out.orthogonality, std::abs(L.killing_form(out.w, a)) / scale);
  return out;
}

/// The m-part of [X, sigma Y] for X, Y in g_lambda. Throws MembershipFailure.
inline MComponent m_component(const LieAlgebra& L, const CartanData& C, const RootDatum& datum, std::size_t root,
                              std::span<const double> x, std::span<const double> y,
                              double tol = tolerances::residual) {
  const Root& r = datum.root(root);
  detail::require_in_space(C, r, x, tol, "X");
  detail::require_in_space(C, r, y, tol, "Y");
  MComponent out = m_component_residuals(L, C, datum, root, x, y);
  if (out.membership >= tol || out.orthogonality >= tol)
    throw Error(ErrorCode::MembershipFailure, "m-component residuals " + std::to_string(out.membership) + ", " +
                                                  std::to_string(out.orthogonality));
  return out;
}

/// Orthonormal frame of [m, X] = span{[M, X] : M in the m-frame}.
inline Frame bracket_m_space(const LieAlgebra& L, const RootDatum& datum, std::size_t root, std::span<const double> x,
                             double tol = tolerances::residual) {
  const Root& r = datum.root(root);
  const Mat& gram = r.space.gram();
  const double n = gram_norm(gram, x);
  if (n <= 1e-12) throw Error(ErrorCode::ZeroVector, "root vector must be nonzero");
  const Vec unit = scaled(x, 1.0 / n);
  std::vector<Vec> images;
  for (const auto& m : datum.m_frame) {
    Vec img = L.bracket(m, unit);
    if (residual_norm(r.space, img) > tol)
      throw Error(ErrorCode::MembershipFailure, "[m, X] leaves the root space");
    images.push_back(std::move(img));
  }
  return orthonormalize(images, gram, tol);
}

/// Orthonormal frame of {Y in g_lambda : beta_sigma(X, Y) = 0}.
inline Frame perp_space(const LieAlgebra&, const CartanData& C, const RootDatum& datum, std::size_t root,
                        std::span<const double> x) {
  const Root& r = datum.root(root);
  detail::require_nonzero(C, x);
  std::vector<Vec> vectors{scaled(x, 1.0 / C.norm(x))};
  vectors.insert(vectors.end(), r.space.begin(), r.space.end());
  const Frame all = orthonormalize(vectors, C.gram());
  std::vector<Vec> rest(all.begin() + 1, all.end());
  return Frame(std::move(rest), C.gram());
}

/// Dimension, double containment and spanning checks of [m, X] = X^perp
/// over `trials` random unit X in g_lambda.
inline Report verify_theorem1(const LieAlgebra& L, const CartanData& C, const RootDatum& datum, std::size_t root,
                              std::size_t trials, double tol = tolerances::residual, std::uint64_t seed = 42) {
  const Root& r = datum.root(root);
  const std::size_t mult = r.multiplicity();
  double dim_miss = 0.0, containment = 0.0, span = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = trial_rng(seed, stream_id("theorem1", root), t);
    const Vec x = random_unit(r.space, rng);
    const Frame bm = bracket_m_space(L, datum, root, x, detail::structural(tol));
    const Frame perp = perp_space(L, C, datum, root, x);
    dim_miss = std::max({dim_miss, std::abs(static_cast<double>(bm.size()) - static_cast<double>(mult - 1)),
                         std::abs(static_cast<double>(perp.size()) - static_cast<double>(mult - 1))});

    for (const auto& v : bm) containment = std::max(containment, residual_norm(perp, v));
    for (const auto& v : perp) containment = std::max(containment, residual_norm(bm, v));
    // [M, X] is beta_sigma-orthogonal to X for every M in m
    for (const auto& m : datum.m_frame)
      containment = std::max(containment, std::abs(C.beta_sigma(x, L.bracket(m, x))));

    std::vector<Vec> generators{x};
    generators.insert(generators.end(), bm.begin(), bm.end());
    const Frame rx_plus = orthonormalize(generators, C.gram(), detail::structural(tol));
    double miss = rx_plus.size() == mult ? 0.0 : 1.0;
    for (const auto& v : r.space) miss = std::max(miss, residual_norm(rx_plus, v));
    span = std::max(span, miss);
  }
  Report report;
  auto dims = detail::root_entry("theorem1_dimension", datum, r, trials, dim_miss, tol, seed);
  dims.pass = dim_miss == 0.0;
  report.add(dims);
  report.add(detail::root_entry("theorem1_containment", datum, r, trials, containment, tol, seed));
  report.add(detail::root_entry("theorem1_span", datum, r, trials, span, tol, seed));
  return report;
}

// ---------------------------------------------------------------------------

struct ReconstructionWitness {
  std::size_t root = 0;
  Vec x;        // nonzero, in g_lambda
  Vec x_prime;  // in X^perp
  Vec x_pp;     // [[X, X'], sigma X]
  Vec z;        // X'' / (3 lambda(H_lambda) beta(X, sigma X)) + X'
  Vec m;        // element of m with [M, X] = X'
  std::map<std::string, double> residuals;
};

namespace detail {

// Replays the constructive argument; preconditions throw, residuals are recorded.
inline ReconstructionWitness replay_proof(const LieAlgebra& L, const CartanData& C, const RootDatum& datum,
                                          std::size_t root, std::span<const double> x, std::span<const double> xp,
                                          double tol) {
  const Root& r = datum.root(root);
  require_nonzero(C, x);
  require_in_space(C, r, x, tol, "X");
  require_in_space(C, r, xp, tol, "X'");
  const double nx = C.norm(x), nxp = C.norm(xp);
  const double overlap = std::abs(C.beta_sigma(x, xp));
  if (overlap > tol * nx * nxp) throw Error(ErrorCode::NotPerp, "X' is not beta_sigma-orthogonal to X");

  const Vec sx = C.apply_sigma(x);
  const double c = r.coroot_value * L.killing_form(x, sx);  // lambda(H_lambda) beta(X, sigma X) < 0
  if (std::abs(c) <= 1e-12 * nx * nx)
    throw Error(ErrorCode::IdentityFailure, "lambda(H_lambda) beta(X, sigma X) vanishes");

  ReconstructionWitness w;
  w.root = root;
  w.x.assign(x.begin(), x.end());
  w.x_prime.assign(xp.begin(), xp.end());
  const Vec x_xp = L.bracket(x, xp);
  w.x_pp = L.bracket(x_xp, sx);

  // [X, X''] = -2 c [X, X']  (uses 3 lambda not a root)
  Vec p12 = L.bracket(x, w.x_pp);
  axpy(2.0 * c, x_xp, p12);
  const double unit = std::abs(c) * nx * nxp;
  w.residuals["p12"] = relative(C.norm(p12), unit);

  // 3 c X'' = [X, [sigma X, X'']]
  Vec triple = scaled(w.x_pp, 3.0 * c);
  axpy(-1.0, L.bracket(x, L.bracket(sx, w.x_pp)), triple);
  w.residuals["triple"] = relative(C.norm(triple), unit * nx);

  w.z = add(scaled(w.x_pp, 1.0 / (3.0 * c)), xp);
  w.residuals["z_perp"] = relative(std::abs(C.beta_sigma(w.z, x)), nx * C.norm(w.z));

  // [sigma X, Z] = -([Z, sigma X] - beta(Z, sigma X) H_lambda) lies in m
  const Vec wm = L.bracket(sx, w.z);
  w.residuals["m_membership"] = relative(residual_norm(datum.m_frame, wm), nx * C.norm(w.z));
  double orth = 0.0;
  for (const auto& a : C.a_frame()) orth = std::max(orth, std::abs(L.killing_form(wm, a)));
  w.residuals["m_orthogonality"] = relative(orth, nx * C.norm(w.z));

  // X' = (1/c) [X, W] = [-W/c, X]
  w.m = scaled(wm, -1.0 / c);
  w.residuals["round_trip"] = relative(C.norm(sub(L.bracket(w.m, x), xp)), nxp);
  return w;
}

}  // namespace detail

/// Builds M in m with [M, X] = X' for X' orthogonal to X in g_lambda.
/// Throws NotPerp, NotInRootSpace, ZeroVector, IdentityFailure.
inline ReconstructionWitness reconstruct(const LieAlgebra& L, const CartanData& C, const RootDatum& datum,
                                         std::size_t root, std::span<const double> x, std::span<const double> xp,
                                         double tol = 1e-8) {
  ReconstructionWitness w = detail::replay_proof(L, C, datum, root, x, xp, tol);
  for (const auto& [name, value] : w.residuals)
    if (value > tol) throw Error(ErrorCode::IdentityFailure, name + " residual " + std::to_string(value));
  return w;
}

// ---------------------------------------------------------------------------
// Sampled reports.

inline Report relation1_report(const LieAlgebra& L, const CartanData& C, const RootDatum& datum, std::size_t root,
                               std::size_t trials, double tol = tolerances::residual, std::uint64_t seed = 42) {
  const Root& r = datum.root(root);
  double worst = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = trial_rng(seed, stream_id("relation1", root), t);
    const Vec x = scaled(random_unit(r.space, rng), uniform(rng, 0.1, 2.0));
    worst = std::max(worst, verify_relation1(L, C, datum, root, x, detail::structural(tol)));
  }
  Report report;
  report.add(detail::root_entry("relation1", datum, r, trials, worst, tol, seed));
  return report;
}

inline Report relation1b_report(const LieAlgebra& L, const CartanData& C, const RootDatum& datum, std::size_t root,
                                std::size_t trials, double tol = tolerances::residual, std::uint64_t seed = 42) {
  const Root& r = datum.root(root);
  double membership = 0.0, orthogonality = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = trial_rng(seed, stream_id("relation1b", root), t);
    const Vec x = random_unit(r.space, rng);
    const Vec y = random_unit(r.space, rng);
    const auto mc = m_component_residuals(L, C, datum, root, x, y);
    membership = std::max(membership, mc.membership);
    orthogonality = std::max(orthogonality, mc.orthogonality);
  }
  Report report;
  report.add(detail::root_entry("relation1b_membership", datum, r, trials, membership, tol, seed));
  report.add(detail::root_entry("relation1b_orthogonality", datum, r, trials, orthogonality, tol, seed));
  return report;
}

/// Replays the reconstruction on random orthogonal pairs. Empty for
/// multiplicity-one roots, where no orthogonal partner exists.
inline Report reconstruct_report(const LieAlgebra& L, const CartanData& C, const RootDatum& datum, std::size_t root,
                                 std::size_t trials, double tol = 1e-8, std::uint64_t seed = 42) {
  const Root& r = datum.root(root);
  Report report;
  if (r.multiplicity() < 2) return report;
  double round_trip = 0.0, p12 = 0.0, triple = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = trial_rng(seed, stream_id("reconstruct", root), t);
    const Vec x = random_unit(r.space, rng);
    const Frame perp = perp_space(L, C, datum, root, x);
    const Vec xp = scaled(random_unit(perp, rng), uniform(rng, 0.1, 2.0));
    const auto w = detail::replay_proof(L, C, datum, root, x, xp, detail::structural(tol));
    round_trip = std::max({round_trip, w.residuals.at("round_trip"), w.residuals.at("m_membership")});
    p12 = std::max(p12, w.residuals.at("p12"));
    triple = std::max(triple, w.residuals.at("triple"));
  }
  report.add(detail::root_entry("reconstruct_round_trip", datum, r, trials, round_trip, tol, seed));
  report.add(detail::root_entry("proof_identity_p12", datum, r, trials, p12, tol, seed));
  report.add(detail::root_entry("proof_identity_triple", datum, r, trials, triple, tol, seed));
  return report;
}

/// (a) [m, X] = 0 on multiplicity-one roots; (b) m = 0 forces multiplicity one.
inline Report corollary_checks(const LieAlgebra& L, const CartanData& C, const RootDatum& datum,
                               std::size_t trials = 10, double tol = tolerances::residual, std::uint64_t seed = 42) {
  double worst_a = 0.0;
  std::size_t samples_a = 0;
  for (std::size_t i = 0; i < datum.roots.size(); ++i) {
    const Root& r = datum.roots[i];
    if (r.multiplicity() != 1) continue;
    for (std::size_t t = 0; t < trials; ++t) {
      Rng rng = trial_rng(seed, stream_id("corollary_a", i), t);
      const Vec x = random_unit(r.space, rng);
      ++samples_a;
      worst_a = std::max(worst_a, static_cast<double>(bracket_m_space(L, datum, i, x, detail::structural(tol)).size()));
      for (const auto& m : datum.m_frame) worst_a = std::max(worst_a, C.norm(L.bracket(m, x)));
    }
  }
  std::size_t offending = 0;
  if (datum.m_frame.empty())
    for (const auto& r : datum.roots)
      if (r.multiplicity() != 1) ++offending;

  Report report;
  report.add({"corollary_a", datum.algebra, std::nullopt, samples_a, worst_a, tol, worst_a < tol, seed, {}, {}});
  report.add({"corollary_b", datum.algebra, std::nullopt, datum.m_frame.empty() ? datum.roots.size() : 0,
              static_cast<double>(offending), tol, offending == 0, seed, {}, {}});
  return report;
}

}  // namespace rootscope
