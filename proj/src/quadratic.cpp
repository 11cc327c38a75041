#include "brody/quadratic.hpp"

#include <cmath>
#include <ostream>
#include <regex>
#include <sstream>

#include "brody/error.hpp"

namespace brody {

namespace {

bool squarefree_above_one(int d) {
  if (d <= 1) return false;
  for (int p = 2; p * p <= d; ++p)
    if (d % (p * p) == 0) return false;
  return true;
}

std::string rational_string(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

}  // namespace

QuadNumber::QuadNumber(Rational a, Rational b, int radicand)
    : a_(std::move(a)), b_(std::move(b)), d_(radicand) {
  if (b_ == 0) {
    d_ = 0;
  } else if (!squarefree_above_one(d_)) {
    throw InvalidInput("quadratic radicand must be squarefree and > 1, got " +
                       std::to_string(radicand));
  }
}

QuadNumber QuadNumber::sqrt_of(int radicand) {
  return QuadNumber(Rational(0), Rational(1), radicand);
}

QuadNumber QuadNumber::from_double(double x) {
  if (!std::isfinite(x)) throw InvalidInput("cannot convert a non-finite double");
  int exp = 0;
  double mant = std::frexp(x, &exp);
  // 53 significant bits fit in a long long after scaling.
  auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  Rational r(scaled);
  exp -= 53;
  if (exp > 0) {
    r *= Rational(BigInt(1) << exp);
  } else if (exp < 0) {
    r /= Rational(BigInt(1) << (-exp));
  }
  return QuadNumber(r);
}

QuadNumber QuadNumber::parse(const std::string& text) {
  static const std::regex num(R"(\s*([+-]?\d+(?:/\d+)?)\s*)");
  static const std::regex full(
      R"(\s*([+-]?\d+(?:/\d+)?)?\s*(?:([+-])\s*(\d+(?:/\d+)?)?\s*\*?\s*sqrt\((\d+)\))?\s*)");
  static const std::regex pure(R"(\s*([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*sqrt\((\d+)\)\s*)");
  std::smatch m;
  if (std::regex_match(text, m, num)) return QuadNumber(Rational(m[1].str()));
  if (std::regex_match(text, m, pure)) {
    Rational b = m[2].matched ? Rational(m[2].str()) : Rational(1);
    if (m[1].str() == "-") b = -b;
    return QuadNumber(Rational(0), b, std::stoi(m[3].str()));
  }
  if (std::regex_match(text, m, full) && m[1].matched && m[4].matched) {
    Rational b = m[3].matched ? Rational(m[3].str()) : Rational(1);
    if (m[2].str() == "-") b = -b;
    return QuadNumber(Rational(m[1].str()), b, std::stoi(m[4].str()));
  }
  throw InvalidInput("cannot parse quadratic number '" + text + "'");
}

int QuadNumber::common_radicand(const QuadNumber& x, const QuadNumber& y) {
  int dx = x.radicand();
  int dy = y.radicand();
  if (dx != 0 && dy != 0 && dx != dy)
    throw InvalidInput("mixing quadratic numbers over different radicands");
  return dx != 0 ? dx : dy;
}

int QuadNumber::sign() const {
  int sa = a_ > 0 ? 1 : (a_ < 0 ? -1 : 0);
  int sb = b_ > 0 ? 1 : (b_ < 0 ? -1 : 0);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: compare a^2 with d*b^2.
  Rational lhs = a_ * a_;
  Rational rhs = Rational(d_) * b_ * b_;
  return lhs > rhs ? sa : sb;
}

double QuadNumber::to_double() const {
  double a = a_.convert_to<double>();
  if (b_ == 0) return a;
  return a + b_.convert_to<double>() * std::sqrt(static_cast<double>(d_));
}

std::string QuadNumber::to_string() const {
  if (b_ == 0) return rational_string(a_);
  std::string out;
  if (a_ != 0) out = rational_string(a_);
  if (b_ > 0 && !out.empty()) out += "+";
  if (b_ == -1) {
    out += "-";
  } else if (b_ != 1) {
    out += rational_string(b_) + "*";
  }
  return out + "sqrt(" + std::to_string(d_) + ")";
}

QuadNumber QuadNumber::operator-() const {
  QuadNumber r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

QuadNumber& QuadNumber::operator+=(const QuadNumber& o) {
  d_ = common_radicand(*this, o);
  a_ += o.a_;
  b_ += o.b_;
  if (b_ == 0) d_ = 0;
  return *this;
}

QuadNumber& QuadNumber::operator-=(const QuadNumber& o) { return *this += -o; }

QuadNumber& QuadNumber::operator*=(const QuadNumber& o) {
  int d = common_radicand(*this, o);
  Rational a = a_ * o.a_ + Rational(d) * b_ * o.b_;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  d_ = b_ == 0 ? 0 : d;
  return *this;
}

QuadNumber& QuadNumber::operator/=(const QuadNumber& o) {
  if (o.is_zero()) throw InvalidInput("division by zero in Q(sqrt(d))");
  int d = common_radicand(*this, o);
  // 1/(a + b r) = (a - b r) / (a^2 - d b^2); the norm is nonzero since d is
  // not a square.
  Rational norm = o.a_ * o.a_ - Rational(d) * o.b_ * o.b_;
  QuadNumber conj(o.a_ / norm, -o.b_ / norm, o.b_ == 0 ? 0 : d);
  return *this *= conj;
}

std::ostream& operator<<(std::ostream& os, const QuadNumber& x) { return os << x.to_string(); }

}  // namespace brody
