#pragma once

#include <vector>

#include "brody/types.hpp"

namespace brody {

/// Complex polynomial, coefficients in increasing degree.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Complex> coeffs);
  static Polynomial constant(Complex c) { return Polynomial({c}); }
  static Polynomial identity() { return Polynomial({0.0, 1.0}); }

  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Complex>& coeffs() const { return c_; }
  Complex coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : Complex(0.0); }
  double max_abs_coeff() const;

  Complex operator()(Complex t) const;
  Polynomial derivative() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Complex s, const Polynomial& a);

 private:
  void trim();
  std::vector<Complex> c_;
};

// All roots via eigenvalues of the companion matrix (degree >= 1).
std::vector<Complex> roots(const Polynomial& p);

/// Number of zeros inside |t| < radius by the argument principle, sampling the
/// circle finely enough that consecutive phase steps stay below pi/4.
int winding_number(const Polynomial& p, double radius);

/// Root with |s| <= search_radius and |p(s)| < 1e-12 * max|coeff|: Newton
/// from 0, falling back to the smallest-modulus companion root. Throws NoRoot
/// when the winding number on the circle is 0.
Complex find_root_near_zero(const Polynomial& p, double search_radius);

}  // namespace brody
