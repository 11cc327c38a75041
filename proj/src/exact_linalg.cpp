#include "brody/exact_linalg.hpp"

#include "brody/error.hpp"

namespace brody {

ExactMatrix ExactMatrix::identity(int n) {
  ExactMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = QuadNumber(1);
  return m;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
  if (cols_ != o.rows_) throw InvalidInput("exact matrix product: shape mismatch");
  ExactMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < o.cols_; ++j) {
      QuadNumber s;
      for (int k = 0; k < cols_; ++k)
        if (!(*this)(i, k).is_zero() && !o(k, j).is_zero()) s += (*this)(i, k) * o(k, j);
      r(i, j) = s;
    }
  return r;
}

Eigen::MatrixXd ExactMatrix::to_double() const {
  Eigen::MatrixXd m(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).to_double();
  return m;
}

std::vector<int> row_reduce(ExactMatrix& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int p = row;
    while (p < m.rows() && m(p, col).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (int c = 0; c < m.cols(); ++c) std::swap(m(p, c), m(row, c));
    QuadNumber inv = QuadNumber(1) / m(row, col);
    for (int c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      QuadNumber f = m(r, col);
      for (int c = col; c < m.cols(); ++c)
        if (!m(row, c).is_zero()) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int rank(ExactMatrix m) { return static_cast<int>(row_reduce(m).size()); }

ExactMatrix nullspace(ExactMatrix m) {
  std::vector<int> pivots = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int p : pivots) is_pivot[p] = true;
  ExactMatrix basis(m.cols(), m.cols() - static_cast<int>(pivots.size()));
  int k = 0;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    basis(free, k) = QuadNumber(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) basis(pivots[r], k) = -m(r, free);
    ++k;
  }
  return basis;
}

ExactMatrix solve(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != a.rows())
    throw InvalidInput("exact solve: shape mismatch");
  int n = a.rows();
  ExactMatrix aug(n, n + b.cols());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
    for (int j = 0; j < b.cols(); ++j) aug(i, n + j) = b(i, j);
  }
  std::vector<int> pivots = row_reduce(aug);
  if (static_cast<int>(pivots.size()) < n || pivots[n - 1] != n - 1)
    throw InvalidInput("exact solve: singular matrix");
  ExactMatrix x(n, b.cols());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < b.cols(); ++j) x(i, j) = aug(i, n + j);
  return x;
}

}  // namespace brody
