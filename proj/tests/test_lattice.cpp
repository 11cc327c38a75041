#include <doctest.h>

#include <cmath>
#include <random>

#include "brody/deformation.hpp"
#include "brody/error.hpp"
#include "brody/lattice.hpp"
#include "oracles.hpp"

using namespace brody;

namespace {

IntMatrix rows_of(std::initializer_list<int> indices) {
  IntMatrix m = IntMatrix::Zero(static_cast<Eigen::Index>(indices.size()), 6);
  int r = 0;
  for (int i : indices) m(r++, i) = 1;
  return m;
}

// Generator indices for the Gaussian lattice.
constexpr int E1 = 0, E2 = 1, E3 = 2, IE1 = 3, IE2 = 4;

Submodule random_rank3(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  IntMatrix m(3, 6);
  do {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 6; ++j) m(i, j) = d(rng);
  } while (integer_rank(m) != 3);
  return Submodule(m);
}

Frame frame_of(std::initializer_list<Vec6> cols) {
  Frame f(6, static_cast<Eigen::Index>(cols.size()));
  int j = 0;
  for (const auto& c : cols) f.col(j++) = c;
  return f;
}

Vec6 unit(int k) { return Vec6::Unit(k); }

}  // namespace

TEST_CASE("lattice validation") {
  CMat36 g = Lattice::gaussian().generators();
  g.col(5) = g.col(0) * 2.0;
  CHECK_THROWS_AS(Lattice{g}, InvalidInput);
  CHECK_NOTHROW(Lattice::gaussian(ArithmeticMode::exact));
}

TEST_CASE("Riemann form of the Gaussian lattice is the standard symplectic matrix") {
  for (auto mode : {ArithmeticMode::floating, ArithmeticMode::exact}) {
    Lattice l = Lattice::gaussian(mode);
    RiemannForm f = RiemannForm::standard(l);
    IntMat6 j = IntMat6::Zero();
    j.topRightCorner(3, 3) = IntMatrix::Identity(3, 3);
    j.bottomLeftCorner(3, 3) = -IntMatrix::Identity(3, 3);
    CHECK(f.alternating() == j);
    CHECK(f.pairing(IntVec6::Unit(E1), IntVec6::Unit(IE1)) == 1);
  }
}

TEST_CASE("Riemann form validation") {
  Lattice l = Lattice::gaussian();
  CHECK_THROWS_AS(RiemannForm::from_hermitian(l, CMat3::Identity() * 0.5), InvalidInput);
  CMat3 h = CMat3::Identity();
  h(0, 1) = 1.0;
  CHECK_THROWS_AS(RiemannForm::from_hermitian(l, h), InvalidInput);
  CHECK_THROWS_AS(RiemannForm::from_hermitian(l, CMat3(-CMat3::Identity())), InvalidInput);
  CHECK_NOTHROW(RiemannForm::from_hermitian(l, CMat3(2.0 * CMat3::Identity())));
}

TEST_CASE("real_span on the Gaussian lattice") {
  Lattice l = Lattice::gaussian();
  RealSubspace s = real_span(l, Submodule(rows_of({E1, E2, E3})));
  CHECK(s.dim() == 3);
  Mat6 expected = oracle::projector(frame_of({unit(0), unit(2), unit(4)}));
  CHECK((s.projector() - expected).norm() < 1e-12);

  RealSubspace line = real_span(l, Submodule(rows_of({E1, IE1})));
  CHECK(line.dim() == 2);
  CHECK((line.projector() - oracle::projector(frame_of({unit(0), unit(1)}))).norm() < 1e-12);
}

TEST_CASE("real_span matches a Gram-Schmidt oracle") {
  std::mt19937_64 rng(5);
  Lattice l = sample_period_matrix(3).lattice;
  for (int trial = 0; trial < 200; ++trial) {
    Submodule sub = random_rank3(rng);
    RealSubspace s = real_span(l, sub);
    CHECK(s.dim() == 3);
    Frame raw = l.real_generators() * sub.hnf().transpose().cast<double>();
    CHECK(projector_distance(s, RealSubspace::span(raw)) < 1e-9);
    CHECK((s.projector() - oracle::projector(raw)).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("complex_span_dim examples") {
  for (auto mode : {ArithmeticMode::floating, ArithmeticMode::exact}) {
    Lattice l = Lattice::gaussian(mode);
    CHECK(complex_span_dim(l, Submodule(rows_of({E1, IE1, E2}))) == 2);
    CHECK(complex_span_dim(l, Submodule(rows_of({E1, E2, E3}))) == 3);
    CHECK(complex_span_dim(l, Submodule(rows_of({E1, IE1}))) == 1);
  }
}

TEST_CASE("is_totally_real examples") {
  for (auto mode : {ArithmeticMode::floating, ArithmeticMode::exact}) {
    Lattice l = Lattice::gaussian(mode);
    TotallyRealResult a = is_totally_real(l, Submodule(rows_of({E1, E2, E3})));
    CHECK(a.totally_real);
    CHECK(std::abs(a.det - Complex(1.0)) < 1e-15);
    TotallyRealResult b = is_totally_real(l, Submodule(rows_of({E1, IE1, E2})));
    CHECK_FALSE(b.totally_real);
    CHECK(std::abs(b.det) < 1e-15);
    if (mode == ArithmeticMode::exact) {
      REQUIRE(a.exact_det);
      CHECK(a.exact_det->re == QuadNumber(1));
      CHECK(b.exact_det->is_zero());
    }
    CHECK_THROWS_AS(is_totally_real(l, Submodule(rows_of({E1, E2}))), InvalidInput);
  }
}

TEST_CASE("is_totally_real agrees with the intersection oracle") {
  std::mt19937_64 rng(99);
  int agree = 0, total = 0, degenerate = 0;
  for (int lat = 0; lat < 5; ++lat) {
    Lattice l = sample_period_matrix(100 + lat).lattice;
    for (int k = 0; k < 100; ++k) {
      Submodule sub = random_rank3(rng);
      Frame raw = l.real_generators() * sub.hnf().transpose().cast<double>();
      Mat6 pu = oracle::projector(raw);
      Mat6 pw = oracle::projector(complex_structure() * raw);
      bool tr = oracle::intersection_dim(pu, pw) == 0;
      agree += tr == is_totally_real(l, sub).totally_real;
      ++total;
    }
    // Submodules containing a complex line of a split lattice.
    DegenerateSample d = sample_degenerate_submodule(200 + lat);
    Frame raw = d.sample.lattice.real_generators() * d.submodule.hnf().transpose().cast<double>();
    bool tr = oracle::intersection_dim(oracle::projector(raw), oracle::projector(complex_structure() * raw)) == 0;
    CHECK_FALSE(tr);
    CHECK_FALSE(is_totally_real(d.sample.lattice, d.submodule).totally_real);
    ++degenerate;
  }
  CHECK(agree == total);
  CHECK(degenerate == 5);
}

TEST_CASE("rational closure: known special directions") {
  Lattice l = Lattice::gaussian();
  ClosureResult a = rational_closure(RealSubspace::span(frame_of({unit(0)})), l);
  CHECK(a.subspace.dim() == 1);
  CHECK(a.heuristic);

  // Irrational slope in the (Re z1, Re z2) plane is dense in that plane.
  Vec6 x = unit(0) + std::sqrt(2.0) * unit(2);
  ClosureResult b = rational_closure(RealSubspace::span(frame_of({x})), l);
  CHECK(b.subspace.dim() == 2);
  CHECK(projector_distance(b.subspace, RealSubspace::span(frame_of({unit(0), unit(2)}))) < 1e-9);

  CVec3 v(1.0, std::sqrt(2.0), std::sqrt(3.0));
  ClosureResult c = rational_closure(
      RealSubspace::span(frame_of({to_real(v), to_real(Complex(0.0, 1.0) * v)})), l);
  CHECK(c.subspace.dim() == 6);
  CHECK(c.relations.rows() == 0);
}

TEST_CASE("rational closure: exact mode") {
  Lattice l = Lattice::gaussian(ArithmeticMode::exact);
  ExactCMatrix v(3, 1);
  v(0, 0) = ExactComplex(QuadNumber(1));
  v(1, 0) = ExactComplex(QuadNumber::sqrt_of(2));
  CHECK(closure_dim_complex_line(v, l) == 4);
  // Floating agrees.
  CHECK(closure_dim_complex_line(CVec3(1.0, std::sqrt(2.0), 0.0), Lattice::gaussian()) == 4);

  ExactCMatrix w(3, 1);
  w(0, 0) = ExactComplex(QuadNumber(1));
  w(1, 0) = ExactComplex::i_unit();
  CHECK(closure_dim_complex_line(w, l) == 2);
  ClosureResult r = rational_closure_exact(w.to_real_columns(), l);
  CHECK_FALSE(r.heuristic);
}

TEST_CASE("closure_dim_complex_line examples") {
  Lattice l = Lattice::gaussian();
  CHECK(closure_dim_complex_line(CVec3(1.0, 0.0, 0.0), l) == 2);
  CHECK(closure_dim_complex_line(CVec3(1.0, Complex(0.0, 1.0), 0.0), l) == 2);
  CHECK_THROWS_AS(closure_dim_complex_line(CVec3::Zero(), l), InvalidInput);
}

TEST_CASE("rational closure properties on random inputs") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> normal;
  Lattice l = sample_period_matrix(8).lattice;
  for (int trial = 0; trial < 20; ++trial) {
    // Random subspace inside a random lattice-rational subspace.
    std::uniform_int_distribution<int> d(-2, 2);
    IntMatrix sub(3, 6);
    do {
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 6; ++j) sub(i, j) = d(rng);
    } while (integer_rank(sub) != 3);
    Frame host = l.real_generators() * sub.transpose().cast<double>();
    Eigen::MatrixXd c(3, 2);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 2; ++j) c(i, j) = normal(rng);
    RealSubspace v = RealSubspace::span(host * c);
    ClosureResult r = rational_closure(v, l);
    CHECK(r.subspace.dim() == 3);
    CHECK(projector_distance(r.subspace, RealSubspace::span(host)) < 1e-9);
    for (int j = 0; j < v.dim(); ++j) CHECK(r.subspace.residual(v.basis().col(j)) < 1e-9);
    ClosureResult again = rational_closure(r.subspace, l);
    CHECK(projector_distance(again.subspace, r.subspace) < 1e-9);
  }
}

TEST_CASE("closure of a lattice-rational complex line is 2") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> d(-4, 4);
  Lattice l = Lattice::gaussian();
  for (int trial = 0; trial < 20; ++trial) {
    CVec3 v;
    for (int k = 0; k < 3; ++k) v(k) = Complex(d(rng), d(rng));
    if (v.norm() == 0.0) continue;
    CHECK(closure_dim_complex_line(v, l) == 2);
  }
}

TEST_CASE("floating closure flags ambiguity") {
  // Relation with residual ~1e-8 (between thresholds): (1, 1 + 1e-8) direction.
  Lattice l = Lattice::gaussian();
  Vec6 x = unit(0) + (1.0 + 1e-8) * unit(2);
  ClosureOptions o;
  o.min_level = 8;
  CHECK_THROWS_AS(rational_closure(RealSubspace::span(frame_of({x})), l, o), PrecisionInsufficient);
}
