#pragma once

// Structure-constant Lie algebras over the reals, the Killing form, and the
// Cartan split induced by an involution.
//
// Elements are coordinate vectors on the basis. Matrices appear only when
// building the algebra from a realization and when exponentiating.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rootscope/error.hpp"
#include "rootscope/numkit.hpp"

namespace rootscope {

class LieAlgebra {
 public:
  /// Solves the structure constants of the span of `basis` and derives the
  /// Killing form from them. Throws DependentBasis, NotClosed, Degenerate.
  static LieAlgebra from_basis(std::vector<Mat> basis, std::string name = {}) {
    if (basis.empty()) throw Error(ErrorCode::DimensionMismatch, "empty basis");
    const std::size_t n = basis.front().rows();
    for (const auto& b : basis)
      if (b.rows() != n || b.cols() != n) throw Error(ErrorCode::DimensionMismatch, "basis matrices differ in shape");

    LieAlgebra L;
    L.name_ = std::move(name);
    L.basis_ = std::move(basis);
    const std::size_t d = L.basis_.size();

    std::vector<Vec> flat;
    flat.reserve(d);
    for (const auto& b : L.basis_) flat.emplace_back(b.entries().begin(), b.entries().end());
    const Mat stacked = Mat::from_columns(flat);  // n^2 x d
    if (rank(stacked) < d) throw Error(ErrorCode::DependentBasis, "basis matrices are linearly dependent");
    const Mat frob = stacked.transpose() * stacked;
    L.frobenius_inverse_ = inverse(frob);

    L.structure_.assign(d * d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) {
        const Vec c = L.coords_of(commutator(L.basis_[i], L.basis_[j]), 1e-10);
        for (std::size_t k = 0; k < d; ++k) {
          L.structure_[L.index(i, j, k)] = c[k];
          L.structure_[L.index(j, i, k)] = -c[k];
        }
      }

    // killing(i, j) = trace(ad e_i ad e_j) = sum_{k,l} c[i][l][k] c[j][k][l]
    Mat killing(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i; j < d; ++j) {
        double t = 0.0;
        for (std::size_t k = 0; k < d; ++k)
          for (std::size_t l = 0; l < d; ++l) t += L.structure(i, l, k) * L.structure(j, k, l);
        killing(i, j) = killing(j, i) = t;
      }
    if (rank(killing) < d) throw Error(ErrorCode::Degenerate, "Killing form is singular; algebra is not semisimple");
    L.killing_ = std::move(killing);
    return L;
  }

  std::size_t dim() const noexcept { return basis_.size(); }
  const std::string& name() const noexcept { return name_; }
  const std::vector<Mat>& basis() const noexcept { return basis_; }
  std::size_t matrix_size() const noexcept { return basis_.front().rows(); }
  const Mat& killing() const noexcept { return *killing_; }

  /// c such that [e_i, e_j] = sum_k c(i, j, k) e_k
  double structure(std::size_t i, std::size_t j, std::size_t k) const { return structure_[index(i, j, k)]; }

  Vec bracket(std::span<const double> x, std::span<const double> y) const {
    check_coords(x);
    check_coords(y);
    const std::size_t d = dim();
    Vec z(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
      if (x[i] == 0.0) continue;
      for (std::size_t j = 0; j < d; ++j) {
        const double w = x[i] * y[j];
        if (w == 0.0) continue;
        const double* c = &structure_[index(i, j, 0)];
        for (std::size_t k = 0; k < d; ++k) z[k] += w * c[k];
      }
    }
    return z;
  }

  /// ad(x) as a d x d matrix: ad(x) * y = [x, y].
  Mat ad(std::span<const double> x) const {
    check_coords(x);
    const std::size_t d = dim();
    Mat a(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      if (x[i] == 0.0) continue;
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) a(k, j) += x[i] * structure(i, j, k);
    }
    return a;
  }

  double killing_form(std::span<const double> x, std::span<const double> y) const {
    return inner(killing(), x, y);
  }

  /// Matrix realization sum_i x_i B_i.
  Mat realize(std::span<const double> x) const {
    check_coords(x);
    Mat m(matrix_size(), matrix_size());
    for (std::size_t i = 0; i < dim(); ++i)
      if (x[i] != 0.0) m += basis_[i] * x[i];
    return m;
  }

  /// Coordinates of a matrix in the basis. Throws NotClosed if the matrix
  /// leaves the span by more than tol * (1 + |m|).
  Vec coords_of(const Mat& m, double tol = 1e-10) const {
    if (m.rows() != matrix_size() || m.cols() != matrix_size())
      throw Error(ErrorCode::DimensionMismatch, "matrix shape vs realization");
    const std::size_t d = dim();
    Vec rhs(d);
    for (std::size_t i = 0; i < d; ++i) rhs[i] = dot(basis_[i].entries(), m.entries());
    Vec x = frobenius_inverse_ * rhs;
    const Mat back = realize(x);
    const double miss = (back - m).norm();
    if (miss > tol * (1.0 + m.norm()))
      throw Error(ErrorCode::NotClosed, "matrix lies outside the span (residual " + std::to_string(miss) + ")");
    return x;
  }

  /// Coordinate matrix of a linear map given on realizations.
  Mat coordinate_map(const std::function<Mat(const Mat&)>& f) const {
    const std::size_t d = dim();
    Mat out(d, d);
    for (std::size_t j = 0; j < d; ++j) out.set_col(j, coords_of(f(basis_[j])));
    return out;
  }

  /// max over basis triples of |[x,[y,z]] + [y,[z,x]] + [z,[x,y]]|_inf
  double jacobi_residual() const {
    const std::size_t d = dim();
    double worst = 0.0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) {
          const Vec x = unit_vector(d, i), y = unit_vector(d, j), z = unit_vector(d, k);
          Vec s = bracket(x, bracket(y, z));
          axpy(1.0, bracket(y, bracket(z, x)), s);
          axpy(1.0, bracket(z, bracket(x, y)), s);
          worst = std::max(worst, max_abs(s));
        }
    return worst;
  }

 private:
  LieAlgebra() = default;

  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const { return (i * dim() + j) * dim() + k; }
  void check_coords(std::span<const double> x) const {
    if (x.size() != dim()) throw Error(ErrorCode::DimensionMismatch, "coordinate vector length");
  }

  std::string name_;
  std::vector<Mat> basis_;
  std::vector<double> structure_;
  Mat frobenius_inverse_{1, 1};
  std::optional<Mat> killing_;
};

inline Vec bracket(const LieAlgebra& L, std::span<const double> x, std::span<const double> y) { return L.bracket(x, y); }
inline Mat ad(const LieAlgebra& L, std::span<const double> x) { return L.ad(x); }
inline double killing_form(const LieAlgebra& L, std::span<const double> x, std::span<const double> y) {
  return L.killing_form(x, y);
}

// ---------------------------------------------------------------------------

/// A Cartan involution with its eigenspaces, the positive-definite form
/// beta_sigma(x, y) = -beta(x, sigma y), and optionally a maximal abelian
/// subspace of the -1 eigenspace. All frames are orthonormal under beta_sigma.
class CartanData {
 public:
  const Mat& sigma() const noexcept { return sigma_; }
  const Mat& gram() const noexcept { return gram_; }
  const Frame& k_frame() const noexcept { return k_frame_; }
  const Frame& p_frame() const noexcept { return p_frame_; }
  const Frame& a_frame() const noexcept { return a_frame_; }
  std::size_t rank() const noexcept { return a_frame_.size(); }

  Vec apply_sigma(std::span<const double> x) const { return sigma_ * x; }
  double beta_sigma(std::span<const double> x, std::span<const double> y) const { return inner(gram_, x, y); }
  double norm(std::span<const double> x) const { return gram_norm(gram_, x); }

  /// Attaches an abelian subspace of p spanned by `generators` (coordinates).
  /// Checks that they lie in p, pairwise commute, and that beta is positive
  /// definite on their span.
  CartanData with_abelian(const LieAlgebra& L, const std::vector<Vec>& generators, double tol = 1e-10) const {
    CartanData out = *this;
    for (const auto& g : generators) {
      const double scale = 1.0 + norm(g);
      if (residual_norm(p_frame_, g) > tol * scale)
        throw Error(ErrorCode::InvalidParams, "abelian generator is not in p");
    }
    for (std::size_t i = 0; i < generators.size(); ++i)
      for (std::size_t j = i + 1; j < generators.size(); ++j)
        if (norm(L.bracket(generators[i], generators[j])) > tol * (1.0 + norm(generators[i]) * norm(generators[j])))
          throw Error(ErrorCode::InvalidParams, "abelian generators do not commute");
    out.a_frame_ = orthonormalize(generators, gram_);
    if (out.a_frame_.size() != generators.size())
      throw Error(ErrorCode::InvalidParams, "abelian generators are linearly dependent");
    const std::size_t r = out.a_frame_.size();
    if (r > 0) {
      Mat beta_a(r, r);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) beta_a(i, j) = L.killing_form(out.a_frame_[i], out.a_frame_[j]);
      try {
        cholesky(beta_a);
      } catch (const Error&) {
        throw Error(ErrorCode::NotCartan, "Killing form is not positive definite on the abelian subspace");
      }
    }
    return out;
  }

 private:
  friend CartanData cartan_split(const LieAlgebra& L, const Mat& sigma);
  CartanData(Mat sigma, Mat gram, Frame k, Frame p)
      : sigma_(std::move(sigma)), gram_(gram), k_frame_(std::move(k)), p_frame_(std::move(p)), a_frame_(std::move(gram)) {}

  Mat sigma_;
  Mat gram_;
  Frame k_frame_;
  Frame p_frame_;
  Frame a_frame_;
};

inline double beta_sigma(const LieAlgebra& L, const CartanData& C, std::span<const double> x, std::span<const double> y) {
  return -L.killing_form(x, C.apply_sigma(y));
}

/// Splits g into the +1 (k) and -1 (p) eigenspaces of an involutive
/// automorphism whose beta_sigma form is positive definite.
inline CartanData cartan_split(const LieAlgebra& L, const Mat& sigma) {
  const std::size_t d = L.dim();
  if (sigma.rows() != d || sigma.cols() != d) throw Error(ErrorCode::DimensionMismatch, "sigma shape");
  const Mat id = Mat::identity(d);
  if ((sigma * sigma - id).norm() > 1e-12 * (1.0 + sigma.norm() * sigma.norm()))
    throw Error(ErrorCode::NotInvolution, "sigma squared is not the identity");

  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      const Vec ei = unit_vector(d, i), ej = unit_vector(d, j);
      const Vec lhs = sigma * L.bracket(ei, ej);
      const Vec rhs = L.bracket(sigma.col(i), sigma.col(j));
      if (max_abs(sub(lhs, rhs)) > 1e-10 * (1.0 + max_abs(lhs)))
        throw Error(ErrorCode::NotAutomorphism, "sigma does not preserve brackets");
    }

  Mat gram = -(L.killing() * sigma);
  if ((gram - gram.transpose()).norm() > 1e-10 * (1.0 + gram.norm()))
    throw Error(ErrorCode::NotCartan, "beta_sigma is not symmetric");
  gram = (gram + gram.transpose()) * 0.5;
  try {
    cholesky(gram);
  } catch (const Error&) {
    throw Error(ErrorCode::NotCartan, "beta_sigma is not positive definite");
  }

  const Frame k_raw = nullspace(sigma - id);
  const Frame p_raw = nullspace(sigma + id);
  Frame k = orthonormalize(k_raw.vectors(), gram);
  Frame p = orthonormalize(p_raw.vectors(), gram);
  if (k.size() + p.size() != d) throw Error(ErrorCode::NotInvolution, "eigenspaces do not fill the algebra");

  for (const auto& x : k)
    for (const auto& y : p)
      if (std::abs(L.killing_form(x, y)) > 1e-10 * (1.0 + gram.norm()))
        throw Error(ErrorCode::NotCartan, "k and p are not Killing-orthogonal");

  return CartanData(sigma, std::move(gram), std::move(k), std::move(p));
}

}  // namespace rootscope
