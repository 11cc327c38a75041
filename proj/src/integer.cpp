#include "brody/integer.hpp"

#include <cmath>
#include <cstdlib>

#include "brody/error.hpp"

namespace brody {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw CapacityExceeded("integer overflow in lattice arithmetic");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw CapacityExceeded("integer overflow in lattice arithmetic");
  return r;
}

// row_t -= q * row_s
void axpy_row(IntMatrix& m, Eigen::Index t, Eigen::Index s, std::int64_t q) {
  if (q == 0) return;
  for (Eigen::Index c = 0; c < m.cols(); ++c) m(t, c) = checked_sub(m(t, c), checked_mul(q, m(s, c)));
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Integer row echelon form on the first `ncols` columns using unimodular row
// operations. Returns the pivot columns; rows past the last pivot are zero in
// those columns.
std::vector<Eigen::Index> integer_echelon(IntMatrix& m, Eigen::Index ncols, bool reduce_above) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < ncols && row < m.rows(); ++col) {
    while (true) {
      Eigen::Index best = -1;
      for (Eigen::Index r = row; r < m.rows(); ++r)
        if (m(r, col) != 0 && (best < 0 || std::llabs(m(r, col)) < std::llabs(m(best, col)))) best = r;
      if (best < 0) break;
      m.row(row).swap(m.row(best));
      bool done = true;
      for (Eigen::Index r = row + 1; r < m.rows(); ++r) {
        if (m(r, col) == 0) continue;
        axpy_row(m, r, row, m(r, col) / m(row, col));
        if (m(r, col) != 0) done = false;
      }
      if (done) break;
    }
    if (row >= m.rows() || m(row, col) == 0) continue;
    if (m(row, col) < 0) m.row(row) = -m.row(row);
    if (reduce_above)
      for (Eigen::Index r = 0; r < row; ++r) axpy_row(m, r, row, floor_div(m(r, col), m(row, col)));
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::int64_t gcd(std::int64_t a, std::int64_t b) {
  a = std::llabs(a);
  b = std::llabs(b);
  while (b != 0) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

IntMatrix primitive_row(const IntMatrix& row) {
  std::int64_t g = 0;
  for (Eigen::Index i = 0; i < row.size(); ++i) g = gcd(g, row(i));
  if (g == 0) return row;
  IntMatrix r = row / g;
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    if (r(i) == 0) continue;
    if (r(i) < 0) r = -r;
    break;
  }
  return r;
}

IntMatrix hermite_normal_form(const IntMatrix& m) {
  IntMatrix work = m;
  auto pivots = integer_echelon(work, work.cols(), true);
  return work.topRows(static_cast<Eigen::Index>(pivots.size()));
}

int integer_rank(const IntMatrix& m) {
  IntMatrix work = m;
  return static_cast<int>(integer_echelon(work, work.cols(), false).size());
}

IntMatrix integer_kernel(const IntMatrix& m) {
  const Eigen::Index n = m.cols();
  // [m^T | I]: row operations that kill the left block leave kernel vectors
  // in the right block.
  IntMatrix aug(n, m.rows() + n);
  aug.leftCols(m.rows()) = m.transpose();
  aug.rightCols(n) = IntMatrix::Identity(n, n);
  auto pivots = integer_echelon(aug, m.rows(), false);
  const auto r = static_cast<Eigen::Index>(pivots.size());
  IntMatrix kernel(n, n - r);
  for (Eigen::Index i = r; i < n; ++i) kernel.col(i - r) = aug.row(i).tail(n).transpose();
  return kernel;
}

IntMatrix lll_reduce(const IntMatrix& rows, const LongMatrix& embedding, long double delta) {
  using LVec = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
  IntMatrix b = rows;
  const Eigen::Index n = b.rows();
  if (n <= 1) return b;
  if (embedding.cols() != b.cols()) throw InvalidInput("lll_reduce: embedding width mismatch");

  auto embed = [&](Eigen::Index i) -> LVec {
    LVec x(b.cols());
    for (Eigen::Index c = 0; c < b.cols(); ++c) x(c) = static_cast<long double>(b(i, c));
    return embedding * x;
  };

  LongMatrix mu = LongMatrix::Zero(n, n);
  LVec norms(n);
  auto gram_schmidt = [&] {
    std::vector<LVec> star(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      LVec v = embed(i);
      star[i] = v;
      for (Eigen::Index j = 0; j < i; ++j) {
        mu(i, j) = norms(j) > 0 ? v.dot(star[j]) / norms(j) : 0.0L;
        star[i] -= mu(i, j) * star[j];
      }
      norms(i) = star[i].squaredNorm();
    }
  };

  gram_schmidt();
  Eigen::Index k = 1;
  long iterations = 0;
  while (k < n) {
    if (++iterations > 1000000) throw CapacityExceeded("lll_reduce: iteration limit");
    bool changed = false;
    for (Eigen::Index j = k - 1; j >= 0; --j) {
      long double q = std::round(mu(k, j));
      if (q == 0) continue;
      if (std::fabs(q) > 9.0e18L) throw CapacityExceeded("lll_reduce: coefficient overflow");
      axpy_row(b, k, j, static_cast<std::int64_t>(q));
      for (Eigen::Index l = 0; l <= j; ++l) mu(k, l) -= q * (l == j ? 1.0L : mu(j, l));
      changed = true;
    }
    if (changed) gram_schmidt();
    if (norms(k) >= (delta - mu(k, k - 1) * mu(k, k - 1)) * norms(k - 1)) {
      ++k;
    } else {
      b.row(k).swap(b.row(k - 1));
      gram_schmidt();
      k = std::max<Eigen::Index>(k - 1, 1);
    }
  }
  return b;
}

}  // namespace brody
