#pragma once

#include <functional>
#include <string>
#include <vector>

#include "brody/lattice.hpp"
#include "brody/polynomial.hpp"
#include "brody/types.hpp"

namespace brody {

inline constexpr int kDefaultMaxDegree = 8;

/// Germ t -> (t, alpha(t), beta(t)) on the disc |t| < radius.
struct CurveGerm {
  Polynomial alpha;
  Polynomial beta;
  double radius = 1.0;

  void validate(int max_degree = kDefaultMaxDegree) const;
  CVec3 point(Complex t) const { return {t, alpha(t), beta(t)}; }
  CVec3 derivative(Complex t) const;
};

// (x1, x2, x3) -> (x1 x2, x2, x3).
CVec3 blowdown_chart(const CVec3& x);

/// The lift t -> (t / alpha(t), alpha(t), beta(t)) of a germ missing the
/// center {x1 = x2 = 0}.
class LiftedCurve {
 public:
  const CurveGerm& germ() const { return germ_; }
  CVec3 point(Complex t) const;
  // First component by the quotient rule (alpha - t alpha') / alpha^2.
  CVec3 derivative(Complex t) const;

 private:
  friend LiftedCurve lift_curve(const CurveGerm& g);
  explicit LiftedCurve(CurveGerm g) : germ_(std::move(g)), dalpha_(germ_.alpha.derivative()), dbeta_(germ_.beta.derivative()) {}
  CurveGerm germ_;
  Polynomial dalpha_;
  Polynomial dbeta_;
};

// Throws LiftUndefined when alpha has a zero with |root| <= radius.
LiftedCurve lift_curve(const CurveGerm& g);

// t + alpha(t) alpha'(t).
Polynomial phi(const CurveGerm& g);

/// Germs indexed by n >= 1 converging to `limit` on the disc.
struct CurveFamily {
  std::string name;
  std::string description;
  std::function<CurveGerm(int)> germ_at;
  CurveGerm limit;
};

// alpha_n = 1/n, beta_n = 0.
CurveFamily constant_family();
// alpha_n = 1/n + t/2, beta_n = 0, on |t| < 1/n.
CurveFamily tilted_family();
// alpha_n = (1 + t + t^2/2)/n, beta_n = t^2/n.
CurveFamily quadratic_family();
const std::vector<std::string>& family_names();
CurveFamily family_by_name(const std::string& name);

struct ExplosionRow {
  int n = 0;
  bool ok = false;
  std::string error;
  Complex s;
  CVec3 lifted_point = CVec3::Zero();
  double base_norm = 0.0;
  double lifted_norm = 0.0;
  double ratio = 0.0;
};

// One germ: root s of phi near 0, then |lift'(s)| / |gamma'(s)|.
ExplosionRow explosion_row(const CurveGerm& g, int n);

struct ExplosionReport {
  std::vector<ExplosionRow> rows;
  std::vector<double> max_so_far;
  double max_ratio = 0.0;
  int failures = 0;
  // Max ratio over n <= n_max exceeds the max over n <= n_max / 2.
  bool growing = false;
};

ExplosionReport explosion_experiment(const CurveFamily& family, int n_max);

struct ObstructionOptions {
  ClosureOptions closure;
  // Translate search weights 10^(k/2) for k in [2, max_half_level].
  int max_half_level = 24;
  // Precision guard: |lambda| must exceed this times the lattice vector norm.
  double relative_precision = 1e-10;
  double chart_radius = 1.0;
  double target_ratio = 100.0;
};

struct Translate {
  CVec3 lambda;         // point of the one-parameter group near the origin
  IntVec6 lattice_vector = IntVec6::Zero();
  CVec3 chart;          // coordinates in the basis (v, N, T)
};

struct ObstructionReport {
  int closure_dim = 0;
  int sum_dim = 0;
  bool closure_heuristic = false;
  std::vector<Translate> translates;
  std::vector<ExplosionRow> rows;
  double max_ratio = 0.0;
  bool growth = false;
};

/// Runs the explosion along translates of the line through the origin in
/// direction v, in the chart where the center (tangent T) is {z1 = z2 = 0}.
/// Throws HypothesisViolated(1) when v is in C T, HypothesisViolated(2) when the
/// closure of the group lies in span_C{T, v}.
ObstructionReport brody_obstruction_experiment(const Lattice& lattice, const CVec3& v, const CVec3& center_tangent,
                                               int n_max, const ObstructionOptions& options = {});

// Same explosion step for explicitly given translates (no hypothesis checks).
ObstructionReport brody_obstruction_from_translates(const CVec3& v, const CVec3& center_tangent,
                                                    const std::vector<CVec3>& translates,
                                                    const ObstructionOptions& options = {});

}  // namespace brody
