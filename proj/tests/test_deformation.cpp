#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "brody/deformation.hpp"
#include "brody/error.hpp"
#include "oracles.hpp"

using namespace brody;

namespace {

constexpr int E1 = 0, E2 = 1, E3 = 2, IE1 = 3, IE2 = 4;

IntMatrix rows_of(std::initializer_list<int> indices) {
  IntMatrix m = IntMatrix::Zero(static_cast<Eigen::Index>(indices.size()), 6);
  int r = 0;
  for (int i : indices) m(r++, i) = 1;
  return m;
}

IntVec6 vec(std::initializer_list<int> indices) {
  IntVec6 v = IntVec6::Zero();
  for (int i : indices) v(i) += 1;
  return v;
}

bool is_hnf(const IntMatrix& h) {
  int last = -1;
  for (int r = 0; r < h.rows(); ++r) {
    int p = 0;
    while (p < 6 && h(r, p) == 0) ++p;
    if (p == 6 || p <= last || h(r, p) <= 0) return false;
    for (int a = 0; a < r; ++a)
      if (h(a, p) < 0 || h(a, p) >= h(r, p)) return false;
    last = p;
  }
  return true;
}

// First admissible w in (sup norm, lexicographic) order by direct sorting.
IntVec6 first_admissible(const Lattice& l, const RiemannForm& f, const Submodule& s, const IntVec6& v, int h) {
  std::vector<IntVec6> all;
  IntVec6 x;
  int n = 2 * h + 1, total = 1;
  for (int k = 0; k < 6; ++k) total *= n;
  for (int code = 0; code < total; ++code) {
    int c = code;
    for (int k = 5; k >= 0; --k) {
      x(k) = c % n - h;
      c /= n;
    }
    if (!x.isZero()) all.push_back(x);
  }
  std::stable_sort(all.begin(), all.end(), [](const IntVec6& a, const IntVec6& b) {
    return a.cwiseAbs().maxCoeff() < b.cwiseAbs().maxCoeff();
  });
  for (const auto& w : all)
    if (check_w(l, f, s, v, w).all()) return w;
  return IntVec6::Zero();
}

}  // namespace

TEST_CASE("kernel_vector examples") {
  Lattice l = Lattice::gaussian();
  RiemannForm f = RiemannForm::standard(l);
  CHECK(kernel_vector(Submodule(rows_of({E1, IE1, E2})), f) == IntVec6::Unit(E2));
  CHECK(kernel_vector(Submodule(rows_of({E1, E2, E3})), f) == IntVec6::Unit(E1));
}

TEST_CASE("kernel_vector is an exact kernel element on random submodules") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> d(-4, 4);
  PeriodSample s = sample_period_matrix(4);
  for (int trial = 0; trial < 300; ++trial) {
    IntMatrix m(3, 6);
    do {
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 6; ++j) m(i, j) = d(rng);
    } while (integer_rank(m) != 3);
    Submodule sub(m);
    IntVec6 v = kernel_vector(sub, s.form);
    CHECK_FALSE(v.isZero());
    for (int i = 0; i < 3; ++i) CHECK(s.form.pairing(v, sub.row(i)) == 0);
    // v lies in the submodule (rank does not grow).
    IntMatrix ext(4, 6);
    ext.topRows(3) = sub.hnf();
    ext.row(3) = v.transpose();
    CHECK(integer_rank(ext) == 3);
    int first = 0;
    while (v(first) == 0) ++first;
    CHECK(v(first) > 0);
  }
}

TEST_CASE("find_w: Gaussian example") {
  for (auto mode : {ArithmeticMode::floating, ArithmeticMode::exact}) {
    Lattice l = Lattice::gaussian(mode);
    RiemannForm f = RiemannForm::standard(l);
    Submodule s(rows_of({E1, IE1, E2}));
    IntVec6 v = IntVec6::Unit(E2);
    CHECK(check_w(l, f, s, v, vec({IE1, IE2, E3})).all());
    WConditions a = check_w(l, f, s, v, vec({IE2}));
    CHECK(a.pairs_with_v);
    CHECK_FALSE(a.nonzero_on_line);
    WConditions b = check_w(l, f, s, v, vec({IE1, IE2}));
    CHECK_FALSE(b.leaves_complex_span);
    IntVec6 w = find_w(l, f, s, v);
    CHECK(check_w(l, f, s, v, w).all());
    CHECK(w == first_admissible(l, f, s, v, 1));
  }
}

TEST_CASE("find_w reports exhaustion") {
  Lattice l = Lattice::gaussian();
  RiemannForm f = RiemannForm::standard(l);
  // Totally real submodule: L = 0, the line condition can never hold.
  CHECK_THROWS_AS(find_w(l, f, Submodule(rows_of({E1, E2, E3})), IntVec6::Unit(E1), 1), NotFound);
}

TEST_CASE("deform: identity at t = 0 and displacement along w") {
  Lattice l = Lattice::gaussian();
  RiemannForm f = RiemannForm::standard(l);
  IntVec6 v = IntVec6::Unit(E2), w = vec({IE1, IE2, E3});
  Lattice same = deform(l, make_deformation(l, f, v, w, 0.0));
  CHECK((same.generators() - l.generators()).norm() == 0.0);

  DeformationData d = make_deformation(l, f, v, w, 0.5);
  Lattice moved = deform(l, d);
  CVec3 wc = l.vector(w);
  for (int i = 0; i < 6; ++i) {
    double c = d.coefficients[i].convert_to<double>();
    CHECK((moved.generators().col(i) - l.generators().col(i) - 0.5 * c * wc).norm() < 1e-15);
  }
  CHECK(d.coefficients[E2] == 1);
  // K is the E-orthogonal of w.
  Vec6 n = f.real_alternating() * l.real_vector(w);
  CHECK((d.k_projector * n).norm() < 1e-12);
  CHECK_THROWS_AS(make_deformation(l, f, v, vec({E3}), 1.0), InvalidInput);
}

TEST_CASE("deform: exact isometry and totally real for t != 0") {
  Lattice l = Lattice::gaussian(ArithmeticMode::exact);
  RiemannForm f = RiemannForm::standard(l);
  Submodule s(rows_of({E1, IE1, E2}));
  DeformationReport r = check_deformation(l, f, s, {0.0, 1.0, 2.0, 0.5, -0.5, -1.0, -2.0});
  REQUIRE(r.entries.size() == 7);
  CHECK_FALSE(r.entries[0].result.totally_real);
  for (std::size_t k = 1; k < r.entries.size(); ++k) {
    CHECK(r.entries[k].result.totally_real);
    REQUIRE(r.entries[k].result.exact_det);
    CHECK_FALSE(r.entries[k].result.exact_det->is_zero());
  }
  for (const auto& e : r.entries) CHECK(e.isometry);
  CHECK(r.as_expected());
}

TEST_CASE("deformation determinant vanishes only at t = 0") {
  Lattice l = Lattice::gaussian();
  RiemannForm f = RiemannForm::standard(l);
  Submodule s(rows_of({E1, IE1, E2}));
  std::vector<double> ts;
  for (int k = -20; k <= 20; ++k) ts.push_back(k / 10.0);
  DeformationReport r = check_deformation(l, f, s, ts);
  // The determinant is a polynomial in t of degree <= 3; fit and compare.
  Eigen::MatrixXcd a(ts.size(), 4);
  Eigen::VectorXcd b(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    for (int p = 0; p < 4; ++p) a(i, p) = std::pow(ts[i], p);
    b(i) = r.entries[i].result.det;
  }
  Eigen::VectorXcd coeffs = a.colPivHouseholderQr().solve(b);
  CHECK((a * coeffs - b).norm() < 1e-9);
  CHECK(std::abs(coeffs(0)) < 1e-12);
  for (const auto& e : r.entries) CHECK(e.result.totally_real == (e.t != 0.0));
}

TEST_CASE("deformed subspaces meet in S ∩ K") {
  DegenerateSample d = sample_degenerate_submodule(5);
  const Lattice& l = d.sample.lattice;
  const RiemannForm& f = d.sample.form;
  IntVec6 v = kernel_vector(d.submodule, f);
  IntVec6 w = find_w(l, f, d.submodule, v);
  RealSubspace s = real_span(l, d.submodule);
  for (auto [a, b] : {std::pair{0.5, 1.0}, std::pair{-1.0, 2.0}, std::pair{0.0, 0.3}}) {
    DeformationData da = make_deformation(l, f, v, w, a), db = make_deformation(l, f, v, w, b);
    RealSubspace sa = real_span(deform(l, da), d.submodule);
    RealSubspace sb = real_span(deform(l, db), d.submodule);
    RealSubspace k = RealSubspace::span(da.k_projector);
    CHECK(projector_distance(intersection(sa, sb, 1e-7), intersection(s, k, 1e-7)) < 1e-8);
  }
}

TEST_CASE("check_deformation on split sampled lattices") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    DegenerateSample d = sample_degenerate_submodule(seed);
    CHECK_FALSE(is_totally_real(d.sample.lattice, d.submodule).totally_real);
    DeformationReport r = check_deformation(d.sample.lattice, d.sample.form, d.submodule,
                                            {0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0});
    CHECK(r.as_expected());
  }
  // Totally real input short-circuits.
  Lattice l = Lattice::gaussian();
  DeformationReport r = check_deformation(l, RiemannForm::standard(l), Submodule(rows_of({E1, E2, E3})), {1.0});
  CHECK(r.already_totally_real);
  CHECK(r.as_expected());
}

TEST_CASE("enumerate_submodules matches the brute-force oracle at height 1") {
  std::vector<IntMatrix> listed = enumerate_submodules(1);
  std::vector<IntMatrix> oracle_list = oracle::brute_force_height_one();
  CHECK(listed.size() == oracle_list.size());
  std::set<std::vector<std::int64_t>> a, b;
  for (const auto& m : listed) {
    CHECK(is_hnf(m));
    CHECK(integer_rank(m) == 3);
    CHECK(hermite_normal_form(m) == m);
    a.insert(std::vector<std::int64_t>(m.data(), m.data() + m.size()));
  }
  for (const auto& m : oracle_list) b.insert(std::vector<std::int64_t>(m.data(), m.data() + m.size()));
  CHECK(a.size() == listed.size());
  CHECK(a == b);
  for (auto triple : {std::vector<int>{0, 1, 2}, std::vector<int>{3, 4, 5}, std::vector<int>{0, 2, 4}}) {
    IntMatrix m = IntMatrix::Zero(3, 6);
    for (int r = 0; r < 3; ++r) m(r, triple[r]) = 1;
    CHECK(a.count(std::vector<std::int64_t>(m.data(), m.data() + m.size())) == 1);
  }
  CHECK(enumerate_submodules(1) == listed);
  CHECK_THROWS_AS(enumerate_submodules(1, 10), CapacityExceeded);
}

TEST_CASE("enumerate_submodules at height 2 exceeds a small cap") {
  CHECK_THROWS_AS(enumerate_submodules(2, 100000), CapacityExceeded);
}

TEST_CASE("period matrices carry the principal polarization") {
  IntMat6 j = IntMat6::Zero();
  j.topRightCorner(3, 3) = IntMatrix::Identity(3, 3);
  j.bottomLeftCorner(3, 3) = -IntMatrix::Identity(3, 3);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    PeriodSample s = sample_period_matrix(seed);
    CHECK(s.form.alternating() == j);
    CHECK((alternating_gram(s.lattice, s.form.hermitian()) - j.cast<double>()).cwiseAbs().maxCoeff() < 1e-9);
  }
  PeriodSample unperturbed = period_lattice(Complex(0.0, 1.0) * CMat3::Identity());
  CHECK((unperturbed.lattice.generators() - Lattice::gaussian().generators()).norm() == 0.0);
  CHECK_THROWS_AS(period_lattice(CMat3::Identity()), InvalidInput);
}

TEST_CASE("genericity scans") {
  Lattice g = Lattice::gaussian();
  ScanReport gs = genericity_scan(g, 1);
  CHECK(gs.count == enumerate_submodules(1).size());
  CHECK_FALSE(gs.failures.empty());
  IntMatrix degenerate = hermite_normal_form(rows_of({E1, IE1, E2}));
  CHECK(std::find(gs.failures.begin(), gs.failures.end(), degenerate) != gs.failures.end());

  ScanReport a = genericity_scan(sample_period_matrix(1).lattice, 1);
  ScanReport b = genericity_scan(sample_period_matrix(2).lattice, 1);
  CHECK(a.failures.empty());
  CHECK(a.min_normalized_det > 1e-6);
  CHECK(a.min_normalized_det != b.min_normalized_det);
}
