#pragma once

// Restricted root space decomposition g = g_0 + sum over roots of g_lambda,
// with g_0 = a + m, computed from one generic element of a and refined by
// the full covector on the a-frame.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rootscope/error.hpp"
#include "rootscope/liealg.hpp"
#include "rootscope/numkit.hpp"
#include "rootscope/report.hpp"
#include "rootscope/sampling.hpp"

namespace rootscope {

struct Root {
  Vec covector;             // lambda(A_i) for the a-frame vectors A_i
  Frame space;              // g_lambda, orthonormal under beta_sigma
  Vec coroot;               // H_lambda in coordinates
  double coroot_value = 0;  // lambda(H_lambda)

  std::size_t multiplicity() const noexcept { return space.size(); }
};

struct RootDatum {
  std::string algebra;
  std::size_t dim = 0;
  std::size_t a_dim = 0;
  std::vector<Root> roots;  // lexicographic on covectors
  Frame g0_frame;
  Frame m_frame;
  double tol = tolerances::residual;
  std::uint64_t seed = 0;
  std::size_t redraws = 0;
  double covector_scale = 1.0;  // max |lambda(A_i)| over all roots

  /// Covectors closer than this in every coordinate are the same root.
  double match_tolerance() const { return 1e-6 * std::max(1.0, covector_scale); }

  std::optional<std::size_t> find(std::span<const double> covector) const {
    for (std::size_t i = 0; i < roots.size(); ++i) {
      const auto& c = roots[i].covector;
      if (c.size() != covector.size()) continue;
      bool same = true;
      for (std::size_t k = 0; k < c.size() && same; ++k) same = std::abs(c[k] - covector[k]) <= match_tolerance();
      if (same) return i;
    }
    return std::nullopt;
  }

  bool is_zero(std::span<const double> covector) const { return max_abs(covector) <= match_tolerance(); }

  std::vector<std::size_t> multiplicities() const {
    std::vector<std::size_t> m;
    for (const auto& r : roots) m.push_back(r.multiplicity());
    return m;
  }

  const Root& root(std::size_t i) const { return roots.at(i); }
};

namespace detail {

// H_lambda from the Gram system of beta on the a-frame.
inline Vec solve_coroot(const LieAlgebra& L, const CartanData& C, std::span<const double> covector, double tol) {
  const std::size_t r = C.rank();
  Mat beta_a(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) beta_a(i, j) = L.killing_form(C.a_frame()[i], C.a_frame()[j]);
  Vec h;
  try {
    h = solve_spd(beta_a, covector);
  } catch (const Error&) {
    throw Error(ErrorCode::GramSingular, "Killing form restricted to a is not positive definite");
  }
  Vec coroot = C.a_frame().combine(h);
  for (std::size_t i = 0; i < r; ++i)
    if (std::abs(L.killing_form(coroot, C.a_frame()[i]) - covector[i]) > tol * (1.0 + std::abs(covector[i])))
      throw Error(ErrorCode::GramSingular, "coroot does not reproduce the covector");
  return coroot;
}

inline bool covector_less(const Vec& a, const Vec& b, double tol) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::abs(a[k] - b[k]) <= tol) continue;
    return a[k] < b[k];
  }
  return false;
}

}  // namespace detail

struct DecomposeOptions {
  double tol = tolerances::residual;
  std::uint64_t seed = 42;
  double gap = 1e-6;  // cluster gap after scaling the spectrum to unit radius
  int max_redraws = 5;
};

/// Root space decomposition for the abelian subspace attached to C.
/// Throws GenericityFailure, ClusterAmbiguity, DecompositionFailure.
inline RootDatum decompose(const LieAlgebra& L, const CartanData& C, const DecomposeOptions& opt) {
  const std::size_t d = L.dim();
  const std::size_t r = C.rank();
  if (r == 0) throw Error(ErrorCode::InvalidParams, "the abelian subspace is trivial");
  const Mat& gram = C.gram();

  std::vector<Mat> ad_a;
  for (const auto& a : C.a_frame()) {
    Mat m = L.ad(a);
    const double asym = (gram * m - m.transpose() * gram).norm();
    if (asym > 1e-9 * (1.0 + gram.norm() * m.norm()))
      throw Error(ErrorCode::NotCartan, "ad(H) is not self-adjoint under beta_sigma");
    ad_a.push_back(std::move(m));
  }

  std::vector<Vec> standard;
  for (std::size_t i = 0; i < d; ++i) standard.push_back(unit_vector(d, i));
  const Mat basis = orthonormalize(standard, gram).matrix();
  const Mat basis_t_gram = basis.transpose() * gram;

  struct Cluster {
    std::vector<Vec> vectors;
    Vec covector;
  };

  std::optional<std::vector<Cluster>> found;
  std::size_t attempt = 0;
  for (; attempt <= static_cast<std::size_t>(opt.max_redraws) && !found; ++attempt) {
    Rng rng = trial_rng(opt.seed, stream_id("decompose"), attempt);
    const Vec h = C.a_frame().combine(gaussian_vector(rng, r));
    const Mat s = basis_t_gram * L.ad(h) * basis;
    const SymEig eig = sym_eig(s, opt.tol);
    double radius = 0.0;
    for (double v : eig.values) radius = std::max(radius, std::abs(v));
    if (radius == 0.0) break;

    std::vector<std::vector<std::size_t>> groups{{0}};
    for (std::size_t k = 1; k < d; ++k) {
      if ((eig.values[k - 1] - eig.values[k]) / radius > opt.gap) groups.emplace_back();
      groups.back().push_back(k);
    }

    std::vector<Cluster> clusters;
    bool generic = true;
    for (const auto& g : groups) {
      Cluster c;
      c.covector.assign(r, 0.0);
      for (std::size_t k : g) {
        const Vec v = basis * eig.vectors[k];
        for (std::size_t i = 0; i < r; ++i) {
          const Vec av = ad_a[i] * v;
          const double lam = inner(gram, v, av);
          c.covector[i] += lam / static_cast<double>(g.size());
          // a merged cluster mixes joint eigenvectors and fails here
          if (gram_norm(gram, sub(av, scaled(v, lam))) > 1e-8 * std::max(1.0, std::abs(lam))) generic = false;
        }
        c.vectors.push_back(v);
      }
      clusters.push_back(std::move(c));
    }
    if (generic) found = std::move(clusters);
  }
  if (!found) throw Error(ErrorCode::GenericityFailure, "no generic element of a after redraws");

  double scale = 0.0;
  for (const auto& c : *found) scale = std::max(scale, max_abs(c.covector));
  const double zero_tol = 1e-6 * std::max(1.0, scale);

  std::vector<Vec> g0_vectors;
  std::vector<Root> roots;
  for (const auto& c : *found) {
    if (max_abs(c.covector) <= zero_tol) {
      g0_vectors.insert(g0_vectors.end(), c.vectors.begin(), c.vectors.end());
      continue;
    }
    Frame space = orthonormalize(c.vectors, gram);
    if (space.size() != c.vectors.size()) throw Error(ErrorCode::DecompositionFailure, "root space lost rank");
    roots.push_back({c.covector, std::move(space), {}, 0.0});
  }
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      bool close = true;
      for (std::size_t k = 0; k < r; ++k)
        close = close && std::abs(roots[i].covector[k] - roots[j].covector[k]) < 10.0 * opt.tol * std::max(1.0, scale);
      if (close) throw Error(ErrorCode::ClusterAmbiguity, "two eigenvalue clusters share a covector");
    }

  Frame g0 = orthonormalize(g0_vectors, gram);

  // m as the kernel of the stacked ad(A_i) inside k
  const Mat k_mat = C.k_frame().matrix();
  std::vector<Mat> blocks;
  for (const auto& m : ad_a) blocks.push_back(m * k_mat);
  std::vector<Vec> m_vectors;
  for (const auto& y : nullspace(vstack(blocks), opt.tol)) m_vectors.push_back(k_mat * y);
  Frame m_frame = orthonormalize(m_vectors, gram);

  // cross-check against the complement of a in g_0
  std::vector<Vec> complement;
  for (const auto& v : g0) complement.push_back(project(C.a_frame(), v).residual);
  const Frame m_alt = orthonormalize(complement, gram, 1e-6);
  if (g0.size() != r + m_frame.size() || m_alt.size() != m_frame.size())
    throw Error(ErrorCode::DecompositionFailure, "g_0 is not a + m (dims " + std::to_string(g0.size()) + ", " +
                                                     std::to_string(r) + " + " + std::to_string(m_frame.size()) + ")");
  for (const auto& v : m_alt)
    if (residual_norm(m_frame, v) > 1e-8)
      throw Error(ErrorCode::DecompositionFailure, "centralizer in k disagrees with the complement of a in g_0");
  for (const auto& a : C.a_frame())
    if (residual_norm(g0, a) > 1e-8) throw Error(ErrorCode::DecompositionFailure, "a is not inside g_0");

  std::size_t total = g0.size();
  for (const auto& root : roots) total += root.multiplicity();
  if (total != d) throw Error(ErrorCode::DecompositionFailure, "dimensions do not add up to dim g");

  RootDatum datum{L.name(), d, r, std::move(roots), std::move(g0), std::move(m_frame),
                  opt.tol,  opt.seed, attempt - 1, scale};
  std::sort(datum.roots.begin(), datum.roots.end(), [&](const Root& a, const Root& b) {
    return detail::covector_less(a.covector, b.covector, datum.match_tolerance());
  });

  for (auto& root : datum.roots) {
    root.coroot = detail::solve_coroot(L, C, root.covector, opt.tol);
    root.coroot_value = dot(root.covector, C.a_frame().coefficients(root.coroot));
    if (!(root.coroot_value > 0.0)) throw Error(ErrorCode::DecompositionFailure, "lambda(H_lambda) is not positive");
  }
  for (const auto& root : datum.roots) {
    const auto neg = datum.find(scaled(root.covector, -1.0));
    if (!neg || datum.roots[*neg].multiplicity() != root.multiplicity())
      throw Error(ErrorCode::DecompositionFailure, "roots do not come in +- pairs");
  }
  return datum;
}

inline RootDatum decompose(const LieAlgebra& L, const CartanData& C, double tol = tolerances::residual,
                           std::uint64_t seed = 42) {
  DecomposeOptions opt;
  opt.tol = tol;
  opt.seed = seed;
  return decompose(L, C, opt);
}

/// H_lambda: the element of a with beta(H_lambda, H) = lambda(H) on a.
inline Vec coroot(const LieAlgebra& L, const CartanData& C, const RootDatum& datum, std::size_t root) {
  return detail::solve_coroot(L, C, datum.root(root).covector, datum.tol);
}

/// lambda(H) for H given in coordinates.
inline double evaluate_root(const CartanData& C, const Root& root, std::span<const double> h) {
  return dot(root.covector, C.a_frame().coefficients(h));
}

// ---------------------------------------------------------------------------

/// Bracket grading, sigma symmetry, eigen residuals and 3-lambda exclusion.
/// Failures are recorded in the report; nothing throws.
inline Report grading_check(const LieAlgebra& L, const CartanData& C, const RootDatum& datum,
                            double tol = tolerances::residual) {
  const std::size_t r = datum.a_dim;
  const auto entry = [&](std::string name, double worst) {
    return CheckResult{std::move(name), datum.algebra, std::nullopt, 1, worst, tol, worst < tol, datum.seed, {}, {}};
  };

  // (covector, frame) pairs including g_0 under the zero covector
  std::vector<std::pair<Vec, const Frame*>> graded;
  graded.emplace_back(Vec(r, 0.0), &datum.g0_frame);
  for (const auto& root : datum.roots) graded.emplace_back(root.covector, &root.space);

  double grading = 0.0;
  for (const auto& [lam, fl] : graded)
    for (const auto& [mu, fm] : graded) {
      const Vec sum = add(lam, mu);
      const Frame* target = nullptr;
      if (datum.is_zero(sum))
        target = &datum.g0_frame;
      else if (auto idx = datum.find(sum))
        target = &datum.roots[*idx].space;
      for (const auto& x : *fl)
        for (const auto& y : *fm) {
          const Vec z = L.bracket(x, y);
          grading = std::max(grading, target ? residual_norm(*target, z) : C.norm(z));
        }
    }

  double symmetry = 0.0;
  for (const auto& root : datum.roots) {
    const auto neg = datum.find(scaled(root.covector, -1.0));
    if (!neg) {
      symmetry = std::max(symmetry, 1.0);
      continue;
    }
    for (const auto& x : root.space)
      symmetry = std::max(symmetry, residual_norm(datum.roots[*neg].space, C.apply_sigma(x)));
  }

  double eigen = 0.0;
  for (const auto& root : datum.roots)
    for (const auto& x : root.space)
      for (std::size_t i = 0; i < r; ++i) {
        const Vec ax = L.bracket(C.a_frame()[i], x);
        eigen = std::max(eigen, C.norm(sub(ax, scaled(x, root.covector[i]))));
      }

  std::size_t triples = 0;
  for (const auto& root : datum.roots)
    if (datum.find(scaled(root.covector, 3.0))) ++triples;

  std::size_t total = datum.a_dim + datum.m_frame.size();
  for (const auto& root : datum.roots) total += root.multiplicity();
  const double missing = std::abs(static_cast<double>(datum.dim) - static_cast<double>(total));

  Report report;
  report.add(entry("grading", grading));
  report.add(entry("sigma_symmetry", symmetry));
  report.add(entry("root_space_eigen", eigen));
  auto three = entry("three_lambda_excluded", static_cast<double>(triples));
  three.pass = triples == 0;
  report.add(three);
  auto complete = entry("completeness", missing);
  complete.pass = missing == 0.0;
  report.add(complete);
  return report;
}

// ---------------------------------------------------------------------------

/// The exported view of a RootDatum.
struct RootSummary {
  std::string algebra;
  std::size_t dim = 0;
  std::size_t rank = 0;
  std::vector<Vec> roots;
  std::vector<std::size_t> multiplicities;
  std::size_t m_dim = 0;
  double tol = 0.0;
  std::uint64_t seed = 0;

  friend bool operator==(const RootSummary&, const RootSummary&) = default;
};

inline RootSummary summarize(const RootDatum& datum) {
  RootSummary s{datum.algebra, datum.dim, datum.a_dim, {}, datum.multiplicities(), datum.m_frame.size(),
                datum.tol,     datum.seed};
  for (const auto& root : datum.roots) s.roots.push_back(root.covector);
  return s;
}

inline Json to_json(const RootSummary& s) {
  Json j;
  j["algebra"] = s.algebra;
  j["dim"] = s.dim;
  j["rank"] = s.rank;
  j["roots"] = s.roots;
  j["multiplicities"] = s.multiplicities;
  j["m_dim"] = s.m_dim;
  j["tol"] = s.tol;
  j["seed"] = s.seed;
  return j;
}

inline RootSummary root_summary_from_json(const Json& j) {
  RootSummary s;
  s.algebra = j.at("algebra").get<std::string>();
  s.dim = j.at("dim").get<std::size_t>();
  s.rank = j.at("rank").get<std::size_t>();
  s.roots = j.at("roots").get<std::vector<Vec>>();
  s.multiplicities = j.at("multiplicities").get<std::vector<std::size_t>>();
  s.m_dim = j.at("m_dim").get<std::size_t>();
  s.tol = j.at("tol").get<double>();
  s.seed = j.at("seed").get<std::uint64_t>();
  return s;
}

}  // namespace rootscope
