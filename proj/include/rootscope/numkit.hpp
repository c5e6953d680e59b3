#pragma once

// Dense real linear algebra for desk-scale problems (dimensions up to ~100).
// Everything here is value-typed and free of shared state.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rootscope/error.hpp"

namespace rootscope {

using Vec = std::vector<double>;

namespace tolerances {
inline constexpr double ortho = 1e-10;
inline constexpr double residual = 1e-9;
}  // namespace tolerances

// ---------------------------------------------------------------------------
// Vector helpers. Named functions rather than operators: Vec is a std type.

inline void require_same_size(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw Error(ErrorCode::DimensionMismatch,
                "vector sizes " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  require_same_size(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline Vec add(std::span<const double> a, std::span<const double> b) {
  require_same_size(a, b);
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec sub(std::span<const double> a, std::span<const double> b) {
  require_same_size(a, b);
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec scaled(std::span<const double> a, double s) {
  Vec r(a.begin(), a.end());
  for (auto& x : r) x *= s;
  return r;
}

// y += alpha * x
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  require_same_size(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline Vec unit_vector(std::size_t n, std::size_t i) {
  Vec e(n, 0.0);
  e.at(i) = 1.0;
  return e;
}

inline double max_abs(std::span<const double> a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

// ---------------------------------------------------------------------------

/// Row-major dense real matrix with strictly positive dimensions.
class Mat {
 public:
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
    check_dims();
  }

  Mat(std::size_t rows, std::size_t cols, std::vector<double> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    check_dims();
    if (data_.size() != rows_ * cols_)
      throw Error(ErrorCode::DimensionMismatch, "entry count does not match shape");
    for (double x : data_)
      if (!std::isfinite(x)) throw Error(ErrorCode::NonFinite, "matrix entry is NaN or Inf");
  }

  Mat(std::initializer_list<std::initializer_list<double>> rows) : rows_(rows.size()), cols_(0) {
    if (rows_ > 0) cols_ = rows.begin()->size();
    check_dims();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged initializer");
      for (double x : r) {
        if (!std::isfinite(x)) throw Error(ErrorCode::NonFinite, "matrix entry is NaN or Inf");
        data_.push_back(x);
      }
    }
  }

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static Mat diagonal(std::span<const double> d) {
    Mat m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  /// Matrix whose columns are the given equal-length vectors.
  static Mat from_columns(const std::vector<Vec>& cols) {
    if (cols.empty()) throw Error(ErrorCode::DimensionMismatch, "no columns");
    Mat m(cols.front().size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) m.set_col(j, cols[j]);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> entries() const noexcept { return data_; }
  std::span<double> entries() noexcept { return data_; }

  Vec row(std::size_t i) const {
    return Vec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
               data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  Vec col(std::size_t j) const {
    Vec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  void set_col(std::size_t j, std::span<const double> v) {
    if (v.size() != rows_) throw Error(ErrorCode::DimensionMismatch, "column length");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  Mat transpose() const {
    Mat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Frobenius norm.
  double norm() const { return std::sqrt(std::inner_product(data_.begin(), data_.end(), data_.begin(), 0.0)); }

  double trace() const {
    require_square("trace");
    double t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  Mat& operator+=(const Mat& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Mat& operator*=(double s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator-(Mat a) { return a *= -1.0; }
  friend Mat operator*(Mat a, double s) { return a *= s; }
  friend Mat operator*(double s, Mat a) { return a *= s; }

  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product shapes");
    Mat c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const double aik = a(i, k);
        if (aik == 0.0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend Vec operator*(const Mat& a, std::span<const double> x) {
    if (a.cols_ != x.size()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector shapes");
    Vec y(a.rows_, 0.0);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < a.cols_; ++j) s += a(i, j) * x[j];
      y[i] = s;
    }
    return y;
  }
  friend Vec operator*(const Mat& a, const Vec& x) { return a * std::span<const double>(x); }

  void require_square(const char* what) const {
    if (!square()) throw Error(ErrorCode::DimensionMismatch, std::string(what) + " needs a square matrix");
  }

 private:
  void check_dims() const {
    if (rows_ == 0 || cols_ == 0) throw Error(ErrorCode::DimensionMismatch, "matrix dimensions must be positive");
  }
  void require_same_shape(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::DimensionMismatch, "matrix shapes differ");
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

inline Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

/// Stacks matrices vertically; all must share a column count.
inline Mat vstack(const std::vector<Mat>& blocks) {
  if (blocks.empty()) throw Error(ErrorCode::DimensionMismatch, "nothing to stack");
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != blocks.front().cols()) throw Error(ErrorCode::DimensionMismatch, "vstack column counts");
    rows += b.rows();
  }
  Mat out(rows, blocks.front().cols());
  std::size_t r0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) out(r0 + i, j) = b(i, j);
    r0 += b.rows();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Inner products under a Gram matrix.

inline double inner(const Mat& gram, std::span<const double> a, std::span<const double> b) {
  if (gram.rows() != a.size() || gram.cols() != b.size())
    throw Error(ErrorCode::DimensionMismatch, "gram inner product shapes");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    double row = 0.0;
    for (std::size_t j = 0; j < b.size(); ++j) row += gram(i, j) * b[j];
    s += a[i] * row;
  }
  return s;
}

inline double gram_norm(const Mat& gram, std::span<const double> a) {
  return std::sqrt(std::max(0.0, inner(gram, a, a)));
}

// ---------------------------------------------------------------------------

/// A list of coordinate vectors that is orthonormal under `gram`.
class Frame {
 public:
  explicit Frame(Mat gram) : gram_(std::move(gram)) { gram_.require_square("frame gram"); }

  Frame(std::vector<Vec> vectors, Mat gram, double tol = tolerances::ortho)
      : gram_(std::move(gram)), vectors_(std::move(vectors)) {
    gram_.require_square("frame gram");
    if (vectors_.size() > gram_.rows())
      throw Error(ErrorCode::DimensionMismatch, "more frame vectors than coordinates");
    for (const auto& v : vectors_)
      if (v.size() != gram_.rows()) throw Error(ErrorCode::DimensionMismatch, "frame vector length");
    if (orthonormality_defect() > tol)
      throw Error(ErrorCode::NotOrthonormal, "defect " + std::to_string(orthonormality_defect()));
  }

  std::size_t size() const noexcept { return vectors_.size(); }
  bool empty() const noexcept { return vectors_.empty(); }
  std::size_t ambient_dim() const noexcept { return gram_.rows(); }
  const std::vector<Vec>& vectors() const noexcept { return vectors_; }
  const Vec& operator[](std::size_t i) const { return vectors_.at(i); }
  const Mat& gram() const noexcept { return gram_; }

  auto begin() const noexcept { return vectors_.begin(); }
  auto end() const noexcept { return vectors_.end(); }

  /// max |<e_i, e_j> - delta_ij|
  double orthonormality_defect() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < vectors_.size(); ++i)
      for (std::size_t j = i; j < vectors_.size(); ++j) {
        const double target = i == j ? 1.0 : 0.0;
        worst = std::max(worst, std::abs(inner(gram_, vectors_[i], vectors_[j]) - target));
      }
    return worst;
  }

  /// Columns are the frame vectors. Requires a nonempty frame.
  Mat matrix() const { return Mat::from_columns(vectors_); }

  /// Linear combination sum_k coeffs[k] * e_k.
  Vec combine(std::span<const double> coeffs) const {
    if (coeffs.size() != vectors_.size()) throw Error(ErrorCode::DimensionMismatch, "coefficient count");
    Vec v(ambient_dim(), 0.0);
    for (std::size_t k = 0; k < coeffs.size(); ++k) axpy(coeffs[k], vectors_[k], v);
    return v;
  }

  /// Coefficients <v, e_k> under the gram.
  Vec coefficients(std::span<const double> v) const {
    Vec c(vectors_.size());
    for (std::size_t k = 0; k < vectors_.size(); ++k) c[k] = inner(gram_, v, vectors_[k]);
    return c;
  }

 private:
  Mat gram_;
  std::vector<Vec> vectors_;
};

struct Projection {
  Vec inside;
  Vec residual;
};

inline Projection project(const Frame& frame, std::span<const double> v) {
  if (v.size() != frame.ambient_dim()) throw Error(ErrorCode::DimensionMismatch, "projected vector length");
  Projection p{Vec(v.size(), 0.0), Vec(v.begin(), v.end())};
  for (const auto& e : frame) {
    const double c = inner(frame.gram(), v, e);
    axpy(c, e, p.inside);
    axpy(-c, e, p.residual);
  }
  return p;
}

/// Gram norm of the part of v outside the frame's span.
inline double residual_norm(const Frame& frame, std::span<const double> v) {
  return gram_norm(frame.gram(), project(frame, v).residual);
}

/// Gram-Schmidt under `gram`, applied twice per vector for stability.
/// Vectors whose residual after projection falls below tol * max(1, |v|) are dropped.
inline Frame orthonormalize(const std::vector<Vec>& vectors, const Mat& gram, double tol = tolerances::residual) {
  gram.require_square("orthonormalize gram");
  std::vector<Vec> out;
  for (const auto& v : vectors) {
    if (v.size() != gram.rows()) throw Error(ErrorCode::DimensionMismatch, "vector length vs gram");
    const double q = inner(gram, v, v);
    if (norm(v) > 0.0 && q <= 0.0)
      throw Error(ErrorCode::GramNotPD, "nonpositive gram norm on a nonzero vector");
    const double original = std::sqrt(std::max(q, 0.0));
    Vec w = v;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& e : out) axpy(-inner(gram, w, e), e, w);
    const double r = gram_norm(gram, w);
    if (r <= tol * std::max(1.0, original)) continue;
    out.push_back(scaled(w, 1.0 / r));
    if (out.size() == gram.rows()) break;
  }
  return Frame(std::move(out), gram);
}

/// Same, with the identity as inner product.
inline Frame orthonormalize(const std::vector<Vec>& vectors, std::size_t dim, double tol = tolerances::residual) {
  return orthonormalize(vectors, Mat::identity(dim), tol);
}

// ---------------------------------------------------------------------------

struct SymEig {
  Vec values;     // descending
  Frame vectors;  // eigenvectors in matching order, orthonormal under the identity
};

/// Cyclic Jacobi eigensolver for symmetric matrices.
inline SymEig sym_eig(const Mat& s_in, double tol = tolerances::residual, int max_sweeps = 100) {
  s_in.require_square("sym_eig");
  const std::size_t n = s_in.rows();
  const double scale = s_in.norm();
  if ((s_in - s_in.transpose()).norm() > tol * scale)
    throw Error(ErrorCode::NonSymmetric, "asymmetry exceeds tolerance");

  Mat a = (s_in + s_in.transpose()) * 0.5;
  Mat v = Mat::identity(n);

  auto off_diagonal = [&] {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    return std::sqrt(off);
  };

  int sweep = 0;
  for (;; ++sweep) {
    const double off = off_diagonal();
    if (off == 0.0 || off <= 1e-15 * scale) break;
    if (sweep >= max_sweeps) throw Error(ErrorCode::NoConvergence, "Jacobi sweep cap reached");
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  Vec values(n);
  std::vector<Vec> vecs(n);
  for (std::size_t k = 0; k < n; ++k) {
    values[k] = a(order[k], order[k]);
    vecs[k] = v.col(order[k]);
  }
  return {std::move(values), Frame(std::move(vecs), Mat::identity(n))};
}

// ---------------------------------------------------------------------------
// Householder QR with column pivoting: M P = Q R.

struct PivotedQR {
  Mat q;                         // m x m orthogonal
  Mat r;                         // m x n upper triangular
  std::vector<std::size_t> perm; // column k of M P is column perm[k] of M
};

inline PivotedQR pivoted_qr(const Mat& m_in) {
  const std::size_t m = m_in.rows(), n = m_in.cols();
  Mat r = m_in;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Vec> reflectors;
  const std::size_t steps = std::min(m, n);
  for (std::size_t k = 0; k < steps; ++k) {
    std::size_t best = k;
    double best_norm = -1.0;
    for (std::size_t j = k; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < m; ++i) s += r(i, j) * r(i, j);
      if (s > best_norm) {
        best_norm = s;
        best = j;
      }
    }
    if (best != k) {
      for (std::size_t i = 0; i < m; ++i) std::swap(r(i, k), r(i, best));
      std::swap(perm[k], perm[best]);
    }
    Vec u(m, 0.0);
    const double alpha = std::sqrt(best_norm);
    if (alpha == 0.0) {
      reflectors.push_back(std::move(u));
      continue;
    }
    const double sign = r(k, k) >= 0 ? 1.0 : -1.0;
    for (std::size_t i = k; i < m; ++i) u[i] = r(i, k);
    u[k] += sign * alpha;
    const double unorm = norm(u);
    for (auto& x : u) x /= unorm;
    for (std::size_t j = k; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < m; ++i) s += u[i] * r(i, j);
      for (std::size_t i = k; i < m; ++i) r(i, j) -= 2.0 * u[i] * s;
    }
    for (std::size_t i = k + 1; i < m; ++i) r(i, k) = 0.0;
    reflectors.push_back(std::move(u));
  }
  // Q = H_0 H_1 ... H_{s-1}
  Mat q = Mat::identity(m);
  for (std::size_t k = reflectors.size(); k-- > 0;) {
    const Vec& u = reflectors[k];
    for (std::size_t j = 0; j < m; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < m; ++i) s += u[i] * q(i, j);
      if (s == 0.0) continue;
      for (std::size_t i = k; i < m; ++i) q(i, j) -= 2.0 * u[i] * s;
    }
  }
  return {std::move(q), std::move(r), std::move(perm)};
}

/// The single absolute rank threshold used everywhere: tol * (1 + |A|_F).
inline double rank_threshold(const Mat& a, double tol) { return tol * (1.0 + a.norm()); }

inline std::size_t rank(const Mat& a, double tol = tolerances::residual) {
  const auto qr = pivoted_qr(a);
  const double threshold = rank_threshold(a, tol);
  std::size_t r = 0;
  const std::size_t steps = std::min(a.rows(), a.cols());
  while (r < steps && std::abs(qr.r(r, r)) > threshold) ++r;
  return r;
}

/// Orthonormal (identity gram) basis of {v : A v = 0}.
inline Frame nullspace(const Mat& a, double tol = tolerances::residual) {
  const std::size_t n = a.cols();
  const auto qr = pivoted_qr(a.transpose());  // A^T P = Q R; leading columns of Q span the row space
  const double threshold = rank_threshold(a, tol);
  std::size_t r = 0;
  const std::size_t steps = std::min(a.rows(), n);
  while (r < steps && std::abs(qr.r(r, r)) > threshold) ++r;
  std::vector<Vec> vecs;
  for (std::size_t j = r; j < n; ++j) vecs.push_back(qr.q.col(j));
  return Frame(std::move(vecs), Mat::identity(n));
}

// ---------------------------------------------------------------------------

/// Lower-triangular L with A = L L^T.
inline Mat cholesky(const Mat& a) {
  a.require_square("cholesky");
  const std::size_t n = a.rows();
  Mat l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0)) throw Error(ErrorCode::NotPD, "nonpositive pivot at " + std::to_string(j));
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

inline Vec solve_spd(const Mat& a, std::span<const double> b) {
  if (b.size() != a.rows()) throw Error(ErrorCode::DimensionMismatch, "rhs length");
  const Mat l = cholesky(a);
  const std::size_t n = a.rows();
  Vec y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y[k];
    y[i] = s / l(i, i);
  }
  Vec x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = y[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= l(k, i) * x[k];
    x[i] = s / l(i, i);
  }
  return x;
}

// LU with partial pivoting, used for inverses and determinants of group elements.
struct LU {
  Mat lu;
  std::vector<std::size_t> piv;
  int sign = 1;
  bool singular = false;
};

inline LU lu_decompose(const Mat& a) {
  a.require_square("lu");
  const std::size_t n = a.rows();
  LU f{a, std::vector<std::size_t>(n), 1, false};
  std::iota(f.piv.begin(), f.piv.end(), 0);
  const double tiny = 1e-300 + 1e-14 * a.norm();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(f.lu(i, k)) > std::abs(f.lu(p, k))) p = i;
    if (std::abs(f.lu(p, k)) <= tiny) {
      f.singular = true;
      continue;
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(p, j));
      std::swap(f.piv[k], f.piv[p]);
      f.sign = -f.sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      f.lu(i, k) /= f.lu(k, k);
      for (std::size_t j = k + 1; j < n; ++j) f.lu(i, j) -= f.lu(i, k) * f.lu(k, j);
    }
  }
  return f;
}

inline double determinant(const Mat& a) {
  const LU f = lu_decompose(a);
  if (f.singular) return 0.0;
  double d = f.sign;
  for (std::size_t i = 0; i < a.rows(); ++i) d *= f.lu(i, i);
  return d;
}

inline Mat inverse(const Mat& a) {
  const LU f = lu_decompose(a);
  if (f.singular) throw Error(ErrorCode::Singular, "matrix is not invertible");
  const std::size_t n = a.rows();
  Mat inv(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    Vec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = f.piv[i] == c ? 1.0 : 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < i; ++k) x[i] -= f.lu(i, k) * x[k];
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t k = i + 1; k < n; ++k) x[i] -= f.lu(i, k) * x[k];
      x[i] /= f.lu(i, i);
    }
    inv.set_col(c, x);
  }
  return inv;
}

// ---------------------------------------------------------------------------

/// Matrix exponential by scaling and squaring around a truncated Taylor series.
inline Mat expm(const Mat& a) {
  a.require_square("expm");
  const std::size_t n = a.rows();
  double one_norm = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::abs(a(i, j));
    one_norm = std::max(one_norm, s);
  }
  int squarings = 0;
  if (one_norm > 0.25) squarings = static_cast<int>(std::ceil(std::log2(one_norm / 0.25)));
  const Mat b = a * std::ldexp(1.0, -squarings);

  // |b| <= 1/4, so 18 terms put the truncation far below machine precision.
  Mat result = Mat::identity(n);
  Mat term = Mat::identity(n);
  for (int k = 1; k <= 18; ++k) {
    term = term * b * (1.0 / k);
    result += term;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

}  // namespace rootscope
