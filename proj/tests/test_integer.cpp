#include <doctest.h>

#include <random>

#include "brody/integer.hpp"

using namespace brody;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, int rows, int cols, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  IntMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

bool is_hnf(const IntMatrix& h) {
  int last_pivot = -1;
  for (int r = 0; r < h.rows(); ++r) {
    int p = 0;
    while (p < h.cols() && h(r, p) == 0) ++p;
    if (p == h.cols() || p <= last_pivot || h(r, p) <= 0) return false;
    for (int above = 0; above < r; ++above)
      if (h(above, p) < 0 || h(above, p) >= h(r, p)) return false;
    last_pivot = p;
  }
  return true;
}

}  // namespace

TEST_CASE("HNF is canonical for the row lattice") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    IntMatrix m = random_matrix(rng, 3, 6, 4);
    IntMatrix h = hermite_normal_form(m);
    CHECK(is_hnf(h));
    // A unimodular change of generators gives the same HNF.
    IntMatrix u = IntMatrix::Identity(3, 3);
    u(0, 1) = 2;
    u(2, 0) = -3;
    u(1, 2) = 1;
    IntMatrix extra(4, 6);
    extra.topRows(3) = u * m;
    extra.row(3) = m.row(0) - 5 * m.row(2);
    CHECK(hermite_normal_form(extra) == h);
    CHECK(integer_rank(m) == h.rows());
  }
}

TEST_CASE("HNF drops zero rows and known example") {
  IntMatrix m(3, 3);
  m << 2, 4, 6, 1, 2, 3, 0, 0, 5;
  IntMatrix h = hermite_normal_form(m);
  IntMatrix expected(2, 3);
  expected << 1, 2, 3, 0, 0, 5;
  CHECK(h == expected);
}

TEST_CASE("integer kernel is a saturated basis") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix m = random_matrix(rng, 2, 6, 5);
    IntMatrix k = integer_kernel(m);
    CHECK(k.cols() == 6 - integer_rank(m));
    CHECK((m * k).isZero());
    CHECK(integer_rank(k.transpose()) == k.cols());
    // Saturation: a primitive kernel vector has integer coordinates in the basis.
    Eigen::VectorXd c = Eigen::VectorXd::Random(k.cols()).array().round() + 1.0;
    IntMatrix y = primitive_row((k * c.cast<std::int64_t>()).transpose());
    if (y.isZero()) continue;
    Eigen::VectorXd z = k.cast<double>().colPivHouseholderQr().solve(y.transpose().cast<double>());
    CHECK((z.array() - z.array().round()).abs().maxCoeff() < 1e-9);
  }
  IntMatrix m(1, 2);
  m << 2, 4;
  IntMatrix k = integer_kernel(m);
  REQUIRE(k.cols() == 1);
  CHECK(std::abs(k(0, 0)) == 2);
  CHECK(std::abs(k(1, 0)) == 1);
}

TEST_CASE("primitive_row divides content and fixes sign") {
  IntMatrix r(1, 4);
  r << 0, -6, 9, 3;
  IntMatrix p = primitive_row(r);
  IntMatrix expected(1, 4);
  expected << 0, 2, -3, -1;
  CHECK(p == expected);
}

TEST_CASE("LLL finds a short relation") {
  // x = (1, sqrt 2, 1 + 2 sqrt 2): relation (1, 2, -1) up to sign.
  LongMatrix emb(7, 3);
  emb.topRows(3) = LongMatrix::Identity(3, 3);
  long double s2 = std::sqrt(2.0L);
  emb.row(3) << 1e9L, 1e9L * s2, 1e9L * (1 + 2 * s2);
  emb.bottomRows(3).setZero();
  IntMatrix b = lll_reduce(IntMatrix::Identity(3, 3), emb);
  IntMatrix first = primitive_row(b.row(0));
  IntMatrix expected(1, 3);
  expected << 1, 2, -1;
  CHECK(first == expected);
}
