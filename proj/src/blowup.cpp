#include "brody/blowup.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "brody/error.hpp"
#include "brody/geometry.hpp"

namespace brody {

void CurveGerm::validate(int max_degree) const {
  if (!(radius > 0.0)) throw InvalidInput("curve germ radius must be positive");
  if (alpha.degree() > max_degree || beta.degree() > max_degree)
    throw InvalidInput("curve germ degree exceeds " + std::to_string(max_degree));
}

CVec3 CurveGerm::derivative(Complex t) const { return {1.0, alpha.derivative()(t), beta.derivative()(t)}; }

CVec3 blowdown_chart(const CVec3& x) { return {x(0) * x(1), x(1), x(2)}; }

CVec3 LiftedCurve::point(Complex t) const {
  Complex a = germ_.alpha(t);
  return {t / a, a, germ_.beta(t)};
}

CVec3 LiftedCurve::derivative(Complex t) const {
  Complex a = germ_.alpha(t);
  Complex da = dalpha_(t);
  return {(a - t * da) / (a * a), da, dbeta_(t)};
}

LiftedCurve lift_curve(const CurveGerm& g) {
  g.validate();
  if (g.alpha.is_zero()) throw LiftUndefined("alpha vanishes identically");
  if (g.alpha.degree() >= 1)
    for (const Complex& r : roots(g.alpha))
      if (std::abs(r) <= g.radius)
        throw LiftUndefined("alpha has a zero at |t| = " + std::to_string(std::abs(r)) + " inside the disc");
  return LiftedCurve(g);
}

Polynomial phi(const CurveGerm& g) { return Polynomial::identity() + g.alpha * g.alpha.derivative(); }

CurveFamily constant_family() {
  CurveFamily f;
  f.name = "constant";
  f.description = "alpha_n = 1/n, beta_n = 0";
  f.germ_at = [](int n) {
    return CurveGerm{Polynomial::constant(1.0 / n), Polynomial(), 1.0};
  };
  f.limit = CurveGerm{Polynomial(), Polynomial(), 1.0};
  return f;
}

CurveFamily tilted_family() {
  CurveFamily f;
  f.name = "tilted";
  f.description = "alpha_n = 1/n + t/2, beta_n = 0, radius 1/n";
  f.germ_at = [](int n) {
    return CurveGerm{Polynomial({1.0 / n, 0.5}), Polynomial(), 1.0 / n};
  };
  f.limit = CurveGerm{Polynomial({0.0, 0.5}), Polynomial(), 1.0};
  return f;
}

CurveFamily quadratic_family() {
  CurveFamily f;
  f.name = "quadratic";
  f.description = "alpha_n = (1 + t + t^2/2)/n, beta_n = t^2/n";
  f.germ_at = [](int n) {
    double c = 1.0 / n;
    return CurveGerm{Polynomial({c, c, c / 2}), Polynomial({0.0, 0.0, c}), 1.0};
  };
  f.limit = CurveGerm{Polynomial(), Polynomial(), 1.0};
  return f;
}

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names{"constant", "tilted", "quadratic"};
  return names;
}

CurveFamily family_by_name(const std::string& name) {
  if (name == "constant") return constant_family();
  if (name == "tilted") return tilted_family();
  if (name == "quadratic") return quadratic_family();
  throw InvalidInput("unknown curve family '" + name + "'");
}

ExplosionRow explosion_row(const CurveGerm& g, int n) {
  ExplosionRow row;
  row.n = n;
  try {
    LiftedCurve lift = lift_curve(g);
    row.s = find_root_near_zero(phi(g), g.radius);
    row.lifted_point = lift.point(row.s);
    row.base_norm = g.derivative(row.s).norm();
    row.lifted_norm = lift.derivative(row.s).norm();
    row.ratio = row.lifted_norm / row.base_norm;
    row.ok = true;
  } catch (const Error& e) {
    row.error = e.what();
  }
  return row;
}

ExplosionReport explosion_experiment(const CurveFamily& family, int n_max) {
  if (n_max < 2) throw InvalidInput("explosion experiment needs n_max >= 2");
  ExplosionReport report;
  double half_max = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    ExplosionRow row = explosion_row(family.germ_at(n), n);
    if (row.ok) {
      report.max_ratio = std::max(report.max_ratio, row.ratio);
    } else {
      ++report.failures;
    }
    if (n <= n_max / 2) half_max = report.max_ratio;
    report.max_so_far.push_back(report.max_ratio);
    report.rows.push_back(std::move(row));
  }
  report.growing = report.max_ratio > half_max;
  return report;
}

namespace {

struct Chart {
  CMat3 basis;  // columns v, N, T
  Eigen::PartialPivLU<CMat3> lu;
  CVec3 coords(const CVec3& x) const { return lu.solve(x); }
};

Chart make_chart(const CVec3& v, const CVec3& t) {
  CVec3 n = canonical_phase(v.cross(t).conjugate());
  Chart c;
  c.basis.col(0) = v;
  c.basis.col(1) = n;
  c.basis.col(2) = t;
  c.lu.compute(c.basis);
  return c;
}

void check_transverse(const CVec3& v, const CVec3& t) {
  if (v.norm() == 0.0 || t.norm() == 0.0) throw InvalidInput("direction and center tangent must be nonzero");
  Eigen::Matrix<Complex, 3, 2> m;
  m.col(0) = v / v.norm();
  m.col(1) = t / t.norm();
  Eigen::Vector2d s = Eigen::JacobiSVD<Eigen::Matrix<Complex, 3, 2>>(m).singularValues();
  if (s(1) <= 1e-9) throw HypothesisViolated(1, "direction lies in the complex tangent line of the center");
}

void explode_translates(ObstructionReport& report, const Chart& chart, const ObstructionOptions& options) {
  for (std::size_t k = 0; k < report.translates.size(); ++k) {
    Translate& tr = report.translates[k];
    tr.chart = chart.coords(tr.lambda);
    CurveGerm g{Polynomial::constant(tr.chart(1)), Polynomial::constant(tr.chart(2)), options.chart_radius};
    ExplosionRow row = explosion_row(g, static_cast<int>(k + 1));
    if (row.ok) report.max_ratio = std::max(report.max_ratio, row.ratio);
    report.rows.push_back(std::move(row));
  }
  report.growth = report.max_ratio >= options.target_ratio;
}

}  // namespace

ObstructionReport brody_obstruction_from_translates(const CVec3& v, const CVec3& center_tangent,
                                                    const std::vector<CVec3>& translates,
                                                    const ObstructionOptions& options) {
  check_transverse(v, center_tangent);
  ObstructionReport report;
  for (const auto& l : translates) report.translates.push_back({l, IntVec6::Zero(), CVec3::Zero()});
  explode_translates(report, make_chart(v, center_tangent), options);
  return report;
}

ObstructionReport brody_obstruction_experiment(const Lattice& lattice, const CVec3& v, const CVec3& center_tangent,
                                               int n_max, const ObstructionOptions& options) {
  if (n_max < 2) throw InvalidInput("obstruction experiment needs n_max >= 2");
  check_transverse(v, center_tangent);

  Frame pair(6, 2);
  pair.col(0) = to_real(v);
  pair.col(1) = to_real(Complex(0.0, 1.0) * v);
  RealSubspace line = RealSubspace::span(pair);
  ClosureResult closure = rational_closure(line, lattice, options.closure);

  Frame local(6, 4);
  local.leftCols(2) = pair;
  local.col(2) = to_real(center_tangent);
  local.col(3) = to_real(Complex(0.0, 1.0) * center_tangent);
  RealSubspace sum = subspace_sum(closure.subspace, RealSubspace::span(local));

  ObstructionReport report;
  report.closure_dim = closure.subspace.dim();
  report.sum_dim = sum.dim();
  report.closure_heuristic = closure.heuristic;
  if (report.sum_dim <= 4)
    throw HypothesisViolated(2, "closure of the group lies in span_C{T, v}");

  // Lattice points of the closure sublattice close to the complex line C v.
  const Chart chart = make_chart(v, center_tangent);
  const IntMatrix& sub = closure.sublattice;
  const int m = static_cast<int>(sub.cols());
  Frame g = lattice.real_generators() * sub.cast<double>();
  Mat6 perp = Mat6::Identity() - line.projector();
  Frame pg = perp * g;
  IntMatrix rows = IntMatrix::Identity(m, m);
  double last = std::numeric_limits<double>::infinity();
  for (int k = 2; k <= options.max_half_level && static_cast<int>(report.translates.size()) < n_max; ++k) {
    long double weight = std::pow(10.0L, static_cast<long double>(k) / 2);
    LongMatrix embedding(12, m);
    embedding.topRows(6) = g.cast<long double>();
    embedding.bottomRows(6) = weight * pg.cast<long double>();
    rows = lll_reduce(rows, embedding);

    double best = std::numeric_limits<double>::infinity();
    Translate pick;
    for (int r = 0; r < m; ++r) {
      Eigen::VectorXd x = rows.row(r).transpose().cast<double>();
      Vec6 point = g * x;
      Vec6 lambda = perp * point;
      double ln = lambda.norm();
      if (ln <= options.relative_precision * point.norm() || ln == 0.0) continue;
      CVec3 lc = to_complex(lambda);
      CVec3 z = chart.coords(lc);
      if (std::abs(z(1)) <= 1e-12) continue;
      if (ln < best) {
        best = ln;
        pick.lambda = lc;
        pick.lattice_vector = sub * rows.row(r).transpose();
      }
    }
    if (best < 0.9 * last) {
      report.translates.push_back(pick);
      last = best;
    }
  }
  if (report.translates.size() < 2)
    throw SearchBudgetExceeded("translate search found fewer than two translates");
  explode_translates(report, chart, options);
  return report;
}

}  // namespace brody
