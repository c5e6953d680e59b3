#pragma once

// Brute-force root data computed with Eigen directly from the defining
// matrices, sharing nothing with the library beyond the generator lists.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "rootscope/catalog.hpp"

namespace oracle {

using Eigen::MatrixXd;
using Eigen::VectorXd;

inline MatrixXd to_eigen(const rootscope::Mat& m) {
  MatrixXd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

inline VectorXd flatten(const MatrixXd& m) { return Eigen::Map<const VectorXd>(m.data(), m.size()); }

struct Algebra {
  std::vector<MatrixXd> basis;
  std::vector<MatrixXd> abelian;
  MatrixXd flat;  // columns are flattened basis matrices

  VectorXd coords(const MatrixXd& x) const { return flat.colPivHouseholderQr().solve(flatten(x)); }

  // matrix of Y -> [A, Y] in basis coordinates
  MatrixXd ad(const MatrixXd& a) const {
    const auto n = static_cast<Eigen::Index>(basis.size());
    MatrixXd out(n, n);
    for (Eigen::Index j = 0; j < n; ++j) out.col(j) = coords(a * basis[j] - basis[j] * a);
    return out;
  }
};

inline Algebra load(const rootscope::AlgebraSpec& spec) {
  const auto gens = rootscope::detail::generators(spec);
  Algebra alg;
  for (const auto& b : gens.basis) alg.basis.push_back(to_eigen(b));
  for (const auto& a : gens.abelian) alg.abelian.push_back(to_eigen(a));
  alg.flat.resize(alg.basis.front().size(), static_cast<Eigen::Index>(alg.basis.size()));
  for (std::size_t j = 0; j < alg.basis.size(); ++j) alg.flat.col(static_cast<Eigen::Index>(j)) = flatten(alg.basis[j]);
  return alg;
}

inline std::size_t kernel_dim(const MatrixXd& m) {
  Eigen::FullPivLU<MatrixXd> lu(m);
  lu.setThreshold(1e-9);
  return static_cast<std::size_t>(m.cols() - lu.rank());
}

inline std::vector<double> distinct_real_eigenvalues(const MatrixXd& m) {
  Eigen::EigenSolver<MatrixXd> es(m, false);
  std::vector<double> vals;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) vals.push_back(es.eigenvalues()(i).real());
  std::sort(vals.begin(), vals.end());
  std::vector<double> out;
  for (double v : vals)
    if (out.empty() || std::abs(v - out.back()) > 1e-6) out.push_back(v);
  return out;
}

struct Table {
  std::map<std::vector<long>, std::size_t> mult;  // covector (rounded to 1e-6) -> multiplicity
  std::size_t g0_dim = 0;
  std::size_t m_dim = 0;

  std::multiset<std::size_t> multiplicities() const {
    std::multiset<std::size_t> out;
    for (const auto& [k, v] : mult) out.insert(v);
    return out;
  }
};

inline Table root_table(const rootscope::AlgebraSpec& spec) {
  const Algebra alg = load(spec);
  const auto n = static_cast<Eigen::Index>(alg.basis.size());
  const auto r = alg.abelian.size();
  std::vector<MatrixXd> ads;
  std::vector<std::vector<double>> eig;
  for (const auto& a : alg.abelian) {
    ads.push_back(alg.ad(a));
    eig.push_back(distinct_real_eigenvalues(ads.back()));
  }

  Table table;
  std::vector<std::size_t> idx(r, 0);
  while (true) {
    MatrixXd stacked(n * static_cast<Eigen::Index>(r), n);
    std::vector<long> key;
    bool zero = true;
    for (std::size_t i = 0; i < r; ++i) {
      const double l = eig[i][idx[i]];
      stacked.middleRows(static_cast<Eigen::Index>(i) * n, n) = ads[i] - l * MatrixXd::Identity(n, n);
      key.push_back(std::lround(l * 1e6));
      zero = zero && std::abs(l) < 1e-6;
    }
    const std::size_t d = kernel_dim(stacked);
    if (zero) {
      table.g0_dim = d;
    } else if (d > 0) {
      table.mult[key] = d;
    }
    std::size_t k = 0;
    while (k < r && ++idx[k] == eig[k].size()) idx[k++] = 0;
    if (k == r) break;
  }

  // m: centralizer of a among the antisymmetric elements
  const Eigen::Index sq = alg.flat.rows();
  MatrixXd sym(sq, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const MatrixXd& b = alg.basis[static_cast<std::size_t>(j)];
    sym.col(j) = flatten(b + b.transpose());
  }
  MatrixXd m_sys(n * static_cast<Eigen::Index>(r) + sq, n);
  for (std::size_t i = 0; i < r; ++i) m_sys.middleRows(static_cast<Eigen::Index>(i) * n, n) = ads[i];
  m_sys.bottomRows(sq) = sym;
  table.m_dim = kernel_dim(m_sys);
  return table;
}

}  // namespace oracle
