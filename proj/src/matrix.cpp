#include "ellimod/matrix.hpp"

namespace ellimod {

QMat to_rational(const IMat& m) {
  QMat q(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = Rat(m(i, j));
  return q;
}

std::pair<IMat, Int> clear_denominators(const QMat& m) {
  Int d(1);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d = lcm(d, m(i, j).get_den());
  IMat out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rat scaled = m(i, j) * Rat(d);
      out(i, j) = scaled.get_num();
    }
  return {out, d};
}

std::pair<IVec, Int> clear_denominators(const QVec& v) {
  QMat m(1, v.size());
  for (std::size_t j = 0; j < v.size(); ++j) m(0, j) = v[j];
  auto [im, d] = clear_denominators(m);
  return {im.row(0), d};
}

namespace {

// Gaussian elimination to row echelon form in place; returns pivot columns.
std::vector<std::size_t> echelonize(QMat& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Rat inv = Rat(1) / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rat f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t q_rank(QMat m) { return echelonize(m).size(); }

Rat q_det(QMat m) {
  if (m.rows() != m.cols()) throw defect_error("determinant of non-square matrix");
  Rat det(1);
  std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return Rat(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    Rat inv = Rat(1) / m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Rat f = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

std::optional<QMat> q_inverse(const QMat& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  std::size_t n = m.rows();
  QMat aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto pivots = echelonize(aug);
  if (pivots.size() != n || (n > 0 && pivots.back() != n - 1)) return std::nullopt;
  QMat inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

QMat q_kernel_right(const QMat& m) {
  QMat work = m;
  auto pivots = echelonize(work);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  QMat kernel(0, m.cols());
  for (std::size_t free_c = 0; free_c < m.cols(); ++free_c) {
    if (is_pivot[free_c]) continue;
    QVec v(m.cols(), Rat(0));
    v[free_c] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -work(r, free_c);
    kernel.append_row(v);
  }
  return kernel;
}

std::optional<QVec> q_solve_in_rowspace(const QMat& basis_rows, const QVec& v) {
  // Solve x * B = v, i.e. B^T x^T = v^T.
  std::size_t k = basis_rows.rows(), n = basis_rows.cols();
  if (v.size() != n) throw defect_error("q_solve_in_rowspace: dimension mismatch");
  QMat aug(n, k + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug(i, j) = basis_rows(j, i);
    aug(i, k) = v[i];
  }
  auto pivots = echelonize(aug);
  QVec x(k, Rat(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == k) return std::nullopt;  // inconsistent
    x[pivots[r]] = aug(r, k);
  }
  return x;
}

bool q_in_rowspace(const QMat& basis_rows, const QVec& v) {
  return q_solve_in_rowspace(basis_rows, v).has_value();
}

}  // namespace ellimod
