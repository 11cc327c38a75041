#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <iosfwd>
#include <string>

namespace brody {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Element a + b*sqrt(d) of the real quadratic field Q(sqrt(d)).
///
/// The radicand d is a squarefree integer > 1, or 0 for a plain rational.
/// Numbers over different radicands can only be combined when one of them is
/// rational; anything else throws InvalidInput.
class QuadNumber {
 public:
  QuadNumber() = default;
  QuadNumber(long long a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  QuadNumber(Rational a) : a_(std::move(a)) {}  // NOLINT
  QuadNumber(Rational a, Rational b, int radicand);

  static QuadNumber sqrt_of(int radicand);
  // Exact value of a finite double.
  static QuadNumber from_double(double x);
  // Parses "p/q", "p/q+r/s*sqrt(d)", "r/s*sqrt(d)" and "sqrt(d)".
  static QuadNumber parse(const std::string& text);

  const Rational& rational_part() const { return a_; }
  const Rational& irrational_part() const { return b_; }
  int radicand() const { return b_ == 0 ? 0 : d_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }
  int sign() const;
  double to_double() const;
  std::string to_string() const;

  QuadNumber operator-() const;
  QuadNumber& operator+=(const QuadNumber& o);
  QuadNumber& operator-=(const QuadNumber& o);
  QuadNumber& operator*=(const QuadNumber& o);
  QuadNumber& operator/=(const QuadNumber& o);

  friend QuadNumber operator+(QuadNumber x, const QuadNumber& y) { return x += y; }
  friend QuadNumber operator-(QuadNumber x, const QuadNumber& y) { return x -= y; }
  friend QuadNumber operator*(QuadNumber x, const QuadNumber& y) { return x *= y; }
  friend QuadNumber operator/(QuadNumber x, const QuadNumber& y) { return x /= y; }
  friend bool operator==(const QuadNumber& x, const QuadNumber& y) {
    return (x - y).is_zero();
  }

 private:
  static int common_radicand(const QuadNumber& x, const QuadNumber& y);

  Rational a_{0};
  Rational b_{0};
  int d_ = 0;
};

std::ostream& operator<<(std::ostream& os, const QuadNumber& x);

/// Complex number whose real and imaginary parts lie in Q(sqrt(d)).
struct ExactComplex {
  QuadNumber re;
  QuadNumber im;

  ExactComplex() = default;
  ExactComplex(QuadNumber r, QuadNumber i = QuadNumber()) : re(std::move(r)), im(std::move(i)) {}

  static ExactComplex i_unit() { return {QuadNumber(0), QuadNumber(1)}; }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  ExactComplex conj() const { return {re, -im}; }
  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }

  ExactComplex operator-() const { return {-re, -im}; }
  friend ExactComplex operator+(const ExactComplex& x, const ExactComplex& y) {
    return {x.re + y.re, x.im + y.im};
  }
  friend ExactComplex operator-(const ExactComplex& x, const ExactComplex& y) {
    return {x.re - y.re, x.im - y.im};
  }
  friend ExactComplex operator*(const ExactComplex& x, const ExactComplex& y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  }
  friend ExactComplex operator*(const QuadNumber& s, const ExactComplex& y) {
    return {s * y.re, s * y.im};
  }
  friend bool operator==(const ExactComplex& x, const ExactComplex& y) {
    return x.re == y.re && x.im == y.im;
  }
};

}  // namespace brody
