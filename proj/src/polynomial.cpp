#include "brody/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "brody/error.hpp"

namespace brody {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

Polynomial::Polynomial(std::vector<Complex> coeffs) : c_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == Complex(0.0)) c_.pop_back();
}

double Polynomial::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& c : c_) m = std::max(m, std::abs(c));
  return m;
}

Complex Polynomial::operator()(Complex t) const {
  Complex acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  std::vector<Complex> d;
  for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(static_cast<double>(k) * c_[k]);
  return Polynomial(std::move(d));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Complex> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + Complex(-1.0) * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial();
  std::vector<Complex> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return Polynomial(std::move(c));
}

Polynomial operator*(Complex s, const Polynomial& a) {
  std::vector<Complex> c(a.c_);
  for (auto& x : c) x *= s;
  return Polynomial(std::move(c));
}

std::vector<Complex> roots(const Polynomial& p) {
  const int n = p.degree();
  if (n < 1) throw InvalidInput("roots of a constant polynomial");
  if (n == 1) return {-p.coeff(0) / p.coeff(1)};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -p.coeff(i) / p.coeff(n);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, false);
  std::vector<Complex> out(es.eigenvalues().data(), es.eigenvalues().data() + n);
  return out;
}

int winding_number(const Polynomial& p, double radius) {
  if (!(radius > 0.0)) throw InvalidInput("winding number needs a positive radius");
  const double floor_value = 1e-300;
  auto value = [&](double theta) { return p(std::polar(radius, theta)); };
  double total = 0.0;
  double theta = 0.0;
  Complex prev = value(0.0);
  if (std::abs(prev) < floor_value) throw PrecisionInsufficient("winding number: zero on the circle");
  double step = kTwoPi / 64.0;
  while (theta < kTwoPi) {
    double next_theta = std::min(theta + step, kTwoPi);
    Complex next = value(next_theta);
    if (std::abs(next) < floor_value) throw PrecisionInsufficient("winding number: zero on the circle");
    double d = std::arg(next / prev);
    if (std::abs(d) > kTwoPi / 8.0) {
      step /= 2.0;
      if (step < 1e-12) throw PrecisionInsufficient("winding number: circle passes too close to a zero");
      continue;
    }
    total += d;
    theta = next_theta;
    prev = next;
    step = std::min(step * 1.5, kTwoPi / 64.0);
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

Complex find_root_near_zero(const Polynomial& p, double search_radius) {
  if (p.degree() < 1) throw InvalidInput("find_root_near_zero needs a nonconstant polynomial");
  if (!(search_radius > 0.0)) throw InvalidInput("find_root_near_zero needs a positive radius");
  const double tol = 1e-12 * p.max_abs_coeff();
  if (winding_number(p, search_radius) == 0)
    throw NoRoot("no root inside the disc of radius " + std::to_string(search_radius));

  const Polynomial dp = p.derivative();
  auto newton = [&](Complex s, int iterations) {
    for (int k = 0; k < iterations; ++k) {
      Complex f = p(s);
      if (std::abs(f) < tol) break;
      Complex d = dp(s);
      if (d == Complex(0.0)) break;
      s -= f / d;
    }
    return s;
  };
  auto accept = [&](Complex s) { return std::abs(s) <= search_radius && std::abs(p(s)) < tol; };

  Complex s = newton(Complex(0.0), 100);
  if (accept(s)) return s;

  std::vector<Complex> r = roots(p);
  std::sort(r.begin(), r.end(), [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });
  s = newton(r.front(), 20);
  if (accept(s)) return s;
  if (std::abs(s) > search_radius) throw InternalInvariant("winding number and companion roots disagree");
  throw PrecisionInsufficient("root residual above 1e-12 times the largest coefficient");
}

}  // namespace brody
