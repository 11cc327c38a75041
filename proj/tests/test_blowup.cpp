#include <doctest.h>

#include <cmath>
#include <random>

#include "brody/blowup.hpp"
#include "brody/deformation.hpp"
#include "brody/error.hpp"
#include "brody/geometry.hpp"
#include "oracles.hpp"

using namespace brody;

namespace {

double sup_on_disc(const Polynomial& p, double radius) {
  double m = 0.0;
  for (int k = 0; k <= 64; ++k)
    for (double r : {radius, radius / 2})
      m = std::max(m, std::abs(p(std::polar(r, 2 * 3.14159265358979 * k / 64))));
  return m;
}

}  // namespace

TEST_CASE("polynomial arithmetic") {
  Polynomial p({1.0, 2.0, 3.0});
  CHECK(p.degree() == 2);
  CHECK(p(2.0) == Complex(17.0));
  CHECK(p.derivative()(1.0) == Complex(8.0));
  Polynomial q = p * Polynomial({0.0, 1.0});
  CHECK(q.degree() == 3);
  CHECK((p - p).is_zero());
  std::vector<Complex> r = roots(Polynomial({-2.0, 0.0, 1.0}));
  REQUIRE(r.size() == 2);
  CHECK(std::abs(std::abs(r[0]) - std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("winding number counts roots in the disc") {
  Polynomial p = Polynomial({-0.5, 1.0}) * Polynomial({-3.0, 1.0}) * Polynomial({Complex(0.0, 0.2), 1.0});
  CHECK(winding_number(p, 1.0) == 2);
  CHECK(winding_number(p, 5.0) == 3);
  CHECK(winding_number(p, 0.1) == 0);
}

TEST_CASE("blowdown_chart examples") {
  CHECK(blowdown_chart(CVec3::Zero()) == CVec3::Zero());
  CHECK(blowdown_chart(CVec3(5.0, 1.0, 7.0)) == CVec3(5.0, 1.0, 7.0));
  CHECK(blowdown_chart(CVec3(3.0, 2.0, 1.0)) == CVec3(6.0, 2.0, 1.0));
}

TEST_CASE("lift_curve examples and round trip") {
  LiftedCurve unit = lift_curve(CurveGerm{Polynomial::constant(1.0), Polynomial(), 1.0});
  CHECK((unit.point(0.3) - CVec3(0.3, 1.0, 0.0)).norm() < 1e-15);
  LiftedCurve scaled = lift_curve(CurveGerm{Polynomial::constant(0.25), Polynomial(), 1.0});
  CHECK((scaled.point(0.3) - CVec3(1.2, 0.25, 0.0)).norm() < 1e-15);

  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-0.02, 0.02);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Complex> a{0.1}, b;
    for (int k = 1; k <= 4; ++k) a.emplace_back(u(rng), u(rng));
    for (int k = 0; k <= 4; ++k) b.emplace_back(u(rng), u(rng));
    CurveGerm g{Polynomial(a), Polynomial(b), 0.5};
    LiftedCurve lift = lift_curve(g);
    for (int k = 0; k < 100; ++k) {
      Complex t = std::polar(0.5 * (k % 10) / 10.0, 0.37 * k);
      CHECK((blowdown_chart(lift.point(t)) - g.point(t)).norm() < 1e-12);
    }
  }
}

TEST_CASE("lift_curve rejects curves meeting the center") {
  CHECK_THROWS_AS(lift_curve(CurveGerm{Polynomial({0.1, 1.0}), Polynomial(), 1.0}), LiftUndefined);
  CHECK_THROWS_AS(lift_curve(CurveGerm{Polynomial(), Polynomial(), 1.0}), LiftUndefined);
  CHECK_THROWS_AS(lift_curve(CurveGerm{Polynomial::constant(1.0), Polynomial(), -1.0}), InvalidInput);
  std::vector<Complex> big(10, 0.1);
  CHECK_THROWS_AS(lift_curve(CurveGerm{Polynomial(big), Polynomial(), 0.1}), InvalidInput);
}

TEST_CASE("lifted derivative matches finite differences") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-0.05, 0.05);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Complex> a{Complex(0.2, 0.05)}, b;
    for (int k = 1; k <= 3; ++k) a.emplace_back(u(rng), u(rng));
    for (int k = 0; k <= 3; ++k) b.emplace_back(u(rng), u(rng));
    LiftedCurve lift = lift_curve(CurveGerm{Polynomial(a), Polynomial(b), 0.5});
    for (int k = 0; k < 50; ++k) {
      Complex t = std::polar(0.4 * k / 50.0, 1.3 * k);
      CVec3 fd = oracle::central_difference([&](Complex s) { return lift.point(s); }, t, 1e-6);
      CVec3 exact = lift.derivative(t);
      CHECK((fd - exact).norm() <= 1e-5 * exact.norm());
    }
  }
}

TEST_CASE("phi examples") {
  Polynomial p = phi(CurveGerm{Polynomial::constant(0.3), Polynomial(), 1.0});
  CHECK(p.degree() == 1);
  CHECK(p.coeff(1) == Complex(1.0));
  CHECK(p.coeff(0) == Complex(0.0));

  const double c = 0.1, b = 0.5;
  Polynomial q = phi(CurveGerm{Polynomial({c, b}), Polynomial(), 1.0});
  CHECK(std::abs(q.coeff(1) - (1 + b * b)) < 1e-15);
  CHECK(std::abs(q.coeff(0) - c * b) < 1e-15);
  for (int d = 1; d <= 6; ++d) {
    std::vector<Complex> a(d + 1, 0.3);
    CHECK(phi(CurveGerm{Polynomial(a), Polynomial(), 1.0}).degree() == std::max(1, 2 * d - 1));
  }
}

TEST_CASE("find_root_near_zero examples") {
  CHECK(find_root_near_zero(Polynomial::identity(), 1.0) == Complex(0.0));
  Complex s = find_root_near_zero(Polynomial({0.1 * 0.5, 1 + 0.25}), 1.0);
  CHECK(std::abs(s - Complex(-0.04)) < 1e-15);
  CHECK_THROWS_AS(find_root_near_zero(Polynomial({-10.0, 1.0}), 1.0), NoRoot);
  CHECK_THROWS_AS(find_root_near_zero(Polynomial::constant(2.0), 1.0), InvalidInput);
  // Newton from 0 heads to the far root; the companion fallback finds the near one.
  Polynomial p = Polynomial({-0.9, 1.0}) * Polynomial({Complex(0.0, -5.0), 1.0}) * Polynomial({4.0, 1.0});
  Complex r = find_root_near_zero(p, 1.0);
  CHECK(std::abs(r - 0.9) < 1e-12);
}

TEST_CASE("bundled families converge to their limits and miss the center") {
  for (const auto& name : family_names()) {
    CurveFamily f = family_by_name(name);
    auto dev = [&](int n) {
      CurveGerm g = f.germ_at(n);
      return std::max(sup_on_disc(g.alpha - f.limit.alpha, g.radius), sup_on_disc(g.beta - f.limit.beta, g.radius));
    };
    CHECK(dev(1000) <= 1e-2 * dev(1));
    auto phi_dev = [&](int n) {
      CurveGerm g = f.germ_at(n);
      CurveGerm lim{f.limit.alpha, f.limit.beta, g.radius};
      return sup_on_disc(phi(g) - phi(lim), g.radius);
    };
    CHECK(phi_dev(1000) <= 1e-2 * phi_dev(1) + 1e-15);
    for (int n : {1, 10, 1000}) CHECK(f.germ_at(n).alpha(0.0) != Complex(0.0));
  }
  CHECK_THROWS_AS(family_by_name("nope"), InvalidInput);
}

TEST_CASE("explosion: constant family closed form") {
  ExplosionReport r = explosion_experiment(constant_family(), 1000);
  CHECK(r.failures == 0);
  for (const auto& row : r.rows) {
    CHECK(row.s == Complex(0.0));
    CHECK(row.base_norm == 1.0);
    CHECK(std::abs(row.ratio - row.n) <= 1e-9 * row.n);
  }
  CHECK(r.growing);
}

TEST_CASE("explosion: tilted family") {
  ExplosionReport r = explosion_experiment(tilted_family(), 2000);
  CHECK(r.failures == 0);
  double prev = 0.0;
  bool exceeded = false;
  for (const auto& row : r.rows) {
    // phi_n(t) = 5t/4 + 1/(2n).
    CHECK(std::abs(row.s - Complex(-0.4 / row.n)) < 1e-15);
    CHECK(row.ratio > prev);
    prev = row.ratio;
    exceeded = exceeded || row.ratio > 1000.0;
    CHECK((row.lifted_point - CVec3(-0.5, 0.0, 0.0)).norm() < 1.0 / row.n + 1e-12);
  }
  CHECK(exceeded);
}

TEST_CASE("explosion: quadratic family converges and grows") {
  ExplosionReport r = explosion_experiment(quadratic_family(), 300);
  CHECK(r.failures == 0);
  CHECK(r.growing);
  CHECK(std::abs(r.rows.back().s) < std::abs(r.rows.front().s));
  CHECK(r.rows.back().lifted_point.norm() < r.rows.front().lifted_point.norm());
}

TEST_CASE("obstruction: hypothesis checks") {
  Lattice g = Lattice::gaussian();
  try {
    brody_obstruction_experiment(g, CVec3(1.0, 0.0, 0.0), CVec3(0.0, 0.0, 1.0), 10);
    FAIL("expected a hypothesis violation");
  } catch (const HypothesisViolated& e) {
    CHECK(e.condition() == 2);
  }
  try {
    brody_obstruction_experiment(g, CVec3(1.0, 0.0, 0.0), CVec3(Complex(0.0, 2.0), 0.0, 0.0), 10);
    FAIL("expected a hypothesis violation");
  } catch (const HypothesisViolated& e) {
    CHECK(e.condition() == 1);
  }
}

TEST_CASE("obstruction: synthetic translates reproduce the constant family") {
  std::vector<CVec3> translates;
  for (int n = 1; n <= 50; ++n) translates.emplace_back(0.0, 1.0 / n, 0.0);
  ObstructionReport r = brody_obstruction_from_translates(CVec3(1.0, 0.0, 0.0), CVec3(0.0, 0.0, 1.0), translates);
  REQUIRE(r.rows.size() == 50);
  for (const auto& row : r.rows) CHECK(std::abs(row.ratio - row.n) <= 1e-9 * row.n);
}

TEST_CASE("obstruction: sampled lattice end to end") {
  PeriodSample s = sample_period_matrix(11);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal;
  CVec3 v;
  for (int k = 0; k < 3; ++k) v(k) = Complex(normal(rng), normal(rng));
  Frame w(6, 4);
  w.col(0) = to_real(v);
  w.col(1) = to_real(Complex(0.0, 1.0) * v);
  for (int j = 2; j < 4; ++j)
    for (int i = 0; i < 6; ++i) w(i, j) = normal(rng);
  CVec3 t = choose_line(RealSubspace::span(w)).direction();
  ObstructionReport r = brody_obstruction_experiment(s.lattice, v, t, 20);
  CHECK(r.closure_dim == 6);
  CHECK(r.translates.size() >= 2);
  CHECK(r.growth);
  CHECK(r.max_ratio > 100.0);
  for (std::size_t k = 1; k < r.translates.size(); ++k)
    CHECK(r.translates[k].lambda.norm() < r.translates[k - 1].lambda.norm());
}
