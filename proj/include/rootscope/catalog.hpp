#pragma once

// Classical real forms in transpose-stable matrix realizations, so that the
// Cartan involution is always X -> -X^T and the group involution g -> (g^T)^-1.

#include <complex>
#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rootscope/error.hpp"
#include "rootscope/liealg.hpp"
#include "rootscope/numkit.hpp"

namespace rootscope {

enum class Family { sl_real, su_pq, so_pq, sp_real };

struct AlgebraSpec {
  Family family = Family::sl_real;
  int p = 2;  // n for sl, 2n for sp, p for su/so
  int q = 0;  // only su/so

  static AlgebraSpec sl(int n) { return {Family::sl_real, n, 0}; }
  static AlgebraSpec su(int p, int q) { return {Family::su_pq, p, q}; }
  static AlgebraSpec so(int p, int q) { return {Family::so_pq, p, q}; }
  static AlgebraSpec sp(int two_n) { return {Family::sp_real, two_n, 0}; }

  /// Parses the grammar `sl n`, `su p q`, `so p q`, `sp 2n`.
  static AlgebraSpec parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<std::string> tokens;
    for (std::string t; in >> t;) tokens.push_back(t);
    return parse(tokens);
  }

  static AlgebraSpec parse(const std::vector<std::string>& tokens) {
    if (tokens.empty()) throw Error(ErrorCode::InvalidParams, "empty algebra spec");
    auto number = [&](std::size_t i) {
      if (i >= tokens.size()) throw Error(ErrorCode::InvalidParams, "missing parameter for " + tokens[0]);
      const std::string& t = tokens[i];
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(t, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != t.size()) throw Error(ErrorCode::InvalidParams, "not an integer: '" + t + "'");
      return v;
    };
    const std::string& f = tokens[0];
    AlgebraSpec s;
    std::size_t expected = 0;
    if (f == "sl") {
      s = sl(number(1));
      expected = 2;
    } else if (f == "sp") {
      s = sp(number(1));
      expected = 2;
    } else if (f == "su") {
      s = su(number(1), number(2));
      expected = 3;
    } else if (f == "so") {
      s = so(number(1), number(2));
      expected = 3;
    } else {
      throw Error(ErrorCode::InvalidParams, "unknown family '" + f + "'");
    }
    if (tokens.size() != expected) throw Error(ErrorCode::InvalidParams, "wrong number of parameters for " + f);
    s.validate();
    return s;
  }

  void validate() const {
    switch (family) {
      case Family::sl_real:
        if (p < 2) throw Error(ErrorCode::InvalidParams, "sl needs n >= 2");
        break;
      case Family::sp_real:
        if (p < 2 || p % 2 != 0) throw Error(ErrorCode::InvalidParams, "sp needs an even size >= 2");
        break;
      case Family::su_pq:
        if (p < 1 || q < 1) throw Error(ErrorCode::InvalidParams, "su needs p, q >= 1");
        break;
      case Family::so_pq:
        if (p < 1 || q < 1) throw Error(ErrorCode::InvalidParams, "so needs p, q >= 1");
        if (p + q < 3) throw Error(ErrorCode::InvalidParams, "so(1,1) is abelian");
        break;
    }
  }

  /// Size of the defining (complex for su) matrices.
  int defining_size() const { return (family == Family::su_pq || family == Family::so_pq) ? p + q : p; }

  /// Size of the real matrices used by the realization.
  std::size_t matrix_size() const {
    const int n = defining_size();
    return static_cast<std::size_t>(family == Family::su_pq ? 2 * n : n);
  }

  std::string name() const {
    switch (family) {
      case Family::sl_real: return "sl(" + std::to_string(p) + ",R)";
      case Family::sp_real: return "sp(" + std::to_string(p) + ",R)";
      case Family::su_pq: return "su(" + std::to_string(p) + "," + std::to_string(q) + ")";
      case Family::so_pq: return "so(" + std::to_string(p) + "," + std::to_string(q) + ")";
    }
    return {};
  }

  /// Round-trips through parse().
  std::string spec_string() const {
    switch (family) {
      case Family::sl_real: return "sl " + std::to_string(p);
      case Family::sp_real: return "sp " + std::to_string(p);
      case Family::su_pq: return "su " + std::to_string(p) + " " + std::to_string(q);
      case Family::so_pq: return "so " + std::to_string(p) + " " + std::to_string(q);
    }
    return {};
  }

  friend bool operator==(const AlgebraSpec&, const AlgebraSpec&) = default;
};

namespace detail {

inline Mat unit(std::size_t n, std::size_t i, std::size_t j, double v = 1.0) {
  Mat m(n, n);
  m(i, j) = v;
  return m;
}

// Complex N x N matrix z = re + i im as a real 2N x 2N matrix with blocks [[a,-b],[b,a]].
inline Mat realify(const Mat& re, const Mat& im) {
  const std::size_t n = re.rows();
  Mat out(2 * n, 2 * n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      out(2 * k, 2 * l) = re(k, l);
      out(2 * k, 2 * l + 1) = -im(k, l);
      out(2 * k + 1, 2 * l) = im(k, l);
      out(2 * k + 1, 2 * l + 1) = re(k, l);
    }
  return out;
}

inline Mat complex_unit(std::size_t n, std::size_t k, std::size_t l, std::complex<double> z) {
  return realify(unit(n, k, l, z.real()), unit(n, k, l, z.imag()));
}

struct Generators {
  std::vector<Mat> basis;
  std::vector<Mat> abelian;
};

inline Generators sl_generators(std::size_t n) {
  Generators g;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) g.basis.push_back(unit(n, i, j));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Mat h = unit(n, i, i) - unit(n, i + 1, i + 1);
    g.basis.push_back(h);
    g.abelian.push_back(h);
  }
  return g;
}

// so(p,q) = {X : X^T J + J X = 0}, J = diag(I_p, -I_q)
inline Generators so_generators(std::size_t p, std::size_t q) {
  const std::size_t n = p + q;
  Generators g;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool mixed = i < p && j >= p;
      g.basis.push_back(mixed ? unit(n, i, j) + unit(n, j, i) : unit(n, i, j) - unit(n, j, i));
    }
  for (std::size_t i = 0; i < std::min(p, q); ++i) g.abelian.push_back(unit(n, i, p + i) + unit(n, p + i, i));
  return g;
}

// su(p,q) = {X : X* J + J X = 0, tr X = 0}, realified.
inline Generators su_generators(std::size_t p, std::size_t q) {
  using namespace std::complex_literals;
  const std::size_t n = p + q;
  auto cu = [&](std::size_t k, std::size_t l, std::complex<double> z) { return complex_unit(n, k, l, z); };
  Generators g;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = k + 1; l < n; ++l) {
      const bool mixed = k < p && l >= p;
      if (mixed) {
        g.basis.push_back(cu(k, l, 1.0) + cu(l, k, 1.0));
        g.basis.push_back(cu(k, l, 1i) + cu(l, k, -1i));
      } else {
        g.basis.push_back(cu(k, l, 1.0) - cu(l, k, 1.0));
        g.basis.push_back(cu(k, l, 1i) + cu(l, k, 1i));
      }
    }
  for (std::size_t k = 0; k + 1 < n; ++k) g.basis.push_back(cu(k, k, 1i) - cu(k + 1, k + 1, 1i));
  for (std::size_t k = 0; k < std::min(p, q); ++k) g.abelian.push_back(cu(k, p + k, 1.0) + cu(p + k, k, 1.0));
  return g;
}

// sp(2n,R) = {[[A, B], [C, -A^T]] : B, C symmetric}
inline Generators sp_generators(std::size_t n) {
  const std::size_t m = 2 * n;
  Generators g;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Mat a = unit(m, i, j) - unit(m, n + j, n + i);
      if (i == j) g.abelian.push_back(a);
      g.basis.push_back(std::move(a));
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      g.basis.push_back(i == j ? unit(m, i, n + i) : unit(m, i, n + j) + unit(m, j, n + i));
      g.basis.push_back(i == j ? unit(m, n + i, i) : unit(m, n + i, j) + unit(m, n + j, i));
    }
  return g;
}

inline Generators generators(const AlgebraSpec& spec) {
  const auto p = static_cast<std::size_t>(spec.p), q = static_cast<std::size_t>(spec.q);
  switch (spec.family) {
    case Family::sl_real: return sl_generators(p);
    case Family::so_pq: return so_generators(p, q);
    case Family::su_pq: return su_generators(p, q);
    case Family::sp_real: return sp_generators(p / 2);
  }
  throw Error(ErrorCode::InvalidParams, "unknown family");
}

// The bilinear form preserved by the group, in the real realization.
inline Mat invariant_form(const AlgebraSpec& spec) {
  const std::size_t n = spec.matrix_size();
  Mat j(n, n);
  switch (spec.family) {
    case Family::sl_real: return Mat::identity(n);
    case Family::so_pq:
      for (std::size_t i = 0; i < n; ++i) j(i, i) = static_cast<int>(i) < spec.p ? 1.0 : -1.0;
      return j;
    case Family::su_pq:
      for (std::size_t i = 0; i < n; ++i) j(i, i) = static_cast<int>(i / 2) < spec.p ? 1.0 : -1.0;
      return j;
    case Family::sp_real: {
      const std::size_t h = n / 2;
      for (std::size_t i = 0; i < h; ++i) {
        j(i, h + i) = 1.0;
        j(h + i, i) = -1.0;
      }
      return j;
    }
  }
  return j;
}

inline std::complex<double> complex_determinant(const Mat& realified) {
  const std::size_t n = realified.rows() / 2;
  std::vector<std::complex<double>> a(n * n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) a[k * n + l] = {realified(2 * k, 2 * l), realified(2 * k + 1, 2 * l)};
  std::complex<double> det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
    if (std::abs(a[piv * n + c]) == 0.0) return 0.0;
    if (piv != c) {
      for (std::size_t l = 0; l < n; ++l) std::swap(a[c * n + l], a[piv * n + l]);
      det = -det;
    }
    det *= a[c * n + c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const auto f = a[r * n + c] / a[c * n + c];
      for (std::size_t l = c; l < n; ++l) a[r * n + l] -= f * a[c * n + l];
    }
  }
  return det;
}

}  // namespace detail

struct BuiltAlgebra {
  LieAlgebra algebra;
  CartanData cartan;
};

inline Mat negative_transpose(const Mat& x) { return -x.transpose(); }

/// Realization, Cartan involution -X^T, and the standard maximal abelian
/// subspace of p. Maximality is verified through the centralizer in p.
inline BuiltAlgebra build(const AlgebraSpec& spec) {
  spec.validate();
  auto gens = detail::generators(spec);
  LieAlgebra L = LieAlgebra::from_basis(std::move(gens.basis), spec.name());
  const Mat sigma = L.coordinate_map(negative_transpose);
  CartanData split = cartan_split(L, sigma);
  if (split.p_frame().empty()) throw Error(ErrorCode::InvalidParams, spec.name() + " is compact");

  std::vector<Vec> abelian;
  for (const auto& a : gens.abelian) abelian.push_back(L.coords_of(a));
  CartanData C = split.with_abelian(L, abelian);

  // centralizer of a in p must be a itself
  std::vector<Mat> blocks;
  const Mat p_mat = C.p_frame().matrix();
  for (const auto& a : C.a_frame()) blocks.push_back(L.ad(a) * p_mat);
  const std::size_t centralizer = nullspace(vstack(blocks)).size();
  if (centralizer != C.rank())
    throw Error(ErrorCode::MaximalityFailure, "centralizer of a in p has dimension " + std::to_string(centralizer) +
                                                  ", rank is " + std::to_string(C.rank()));
  return {std::move(L), std::move(C)};
}

/// True iff g satisfies the defining equations of the family's group.
inline bool in_group(const AlgebraSpec& spec, const Mat& g, double tol = 1e-9) {
  const std::size_t n = spec.matrix_size();
  if (g.rows() != n || g.cols() != n) return false;
  const double scale = 1.0 + g.norm() * g.norm();
  if (spec.family == Family::sl_real) return std::abs(determinant(g) - 1.0) <= tol * scale;

  const Mat j = detail::invariant_form(spec);
  if ((g.transpose() * j * g - j).norm() > tol * scale) return false;
  if (spec.family == Family::so_pq) return std::abs(determinant(g) - 1.0) <= tol * scale;
  if (spec.family == Family::su_pq) {
    const Mat complex_structure = detail::realify(Mat(n / 2, n / 2), Mat::identity(n / 2));
    if (commutator(g, complex_structure).norm() > tol * scale) return false;
    return std::abs(detail::complex_determinant(g) - 1.0) <= tol * scale;
  }
  return true;
}

/// Global Cartan involution, Theta(g) = (g^T)^-1. Throws NotInGroup.
inline Mat group_involution(const AlgebraSpec& spec, const Mat& g) {
  if (!in_group(spec, g)) throw Error(ErrorCode::NotInGroup, "matrix is not in the group of " + spec.name());
  return inverse(g.transpose());
}

/// K as the fixed points of Theta.
inline bool k_membership(const AlgebraSpec& spec, const Mat& g, double tol = 1e-9) {
  if (!in_group(spec, g)) return false;
  return (inverse(g.transpose()) - g).norm() <= tol * (1.0 + g.norm());
}

inline std::vector<AlgebraSpec> list_catalog() {
  return {AlgebraSpec::sl(2),    AlgebraSpec::sl(3),    AlgebraSpec::sl(4), AlgebraSpec::su(2, 1),
          AlgebraSpec::so(1, 4), AlgebraSpec::so(2, 3), AlgebraSpec::sp(4)};
}

}  // namespace rootscope
