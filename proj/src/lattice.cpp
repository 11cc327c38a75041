#include "brody/lattice.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>

#include "brody/error.hpp"

namespace brody {

namespace {

using LMat6 = Eigen::Matrix<long double, 6, 6>;
using LFrame = Eigen::Matrix<long double, 6, Eigen::Dynamic>;

ExactMatrix integer_to_exact(const IntMatrix& m) {
  ExactMatrix r(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  for (int i = 0; i < r.rows(); ++i)
    for (int j = 0; j < r.cols(); ++j) r(i, j) = QuadNumber(static_cast<long long>(m(i, j)));
  return r;
}

std::int64_t to_int64(const BigInt& x) {
  if (x > BigInt(std::numeric_limits<std::int64_t>::max()) ||
      x < BigInt(std::numeric_limits<std::int64_t>::min()))
    throw CapacityExceeded("exact closure: coefficient does not fit in 64 bits");
  return x.convert_to<std::int64_t>();
}

// Rows of `rows` scaled to primitive integer vectors.
IntMatrix clear_denominators(const std::vector<std::vector<Rational>>& rows) {
  IntMatrix out(static_cast<Eigen::Index>(rows.size()), rows.empty() ? 0 : static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    BigInt l = 1;
    for (const auto& q : rows[i]) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(q));
    BigInt g = 0;
    std::vector<BigInt> scaled;
    for (const auto& q : rows[i]) {
      BigInt v = boost::multiprecision::numerator(q) * (l / boost::multiprecision::denominator(q));
      g = boost::multiprecision::gcd(g, v);
      scaled.push_back(v);
    }
    for (std::size_t j = 0; j < scaled.size(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_int64(g == 0 ? scaled[j] : scaled[j] / g);
  }
  return out;
}

ClosureResult closure_from_relations(const IntMatrix& relations, const Lattice& lattice) {
  ClosureResult out;
  out.relations = relations;
  if (relations.rows() == 0) {
    out.sublattice = IntMatrix::Identity(6, 6);
  } else {
    out.sublattice = integer_kernel(relations);
  }
  Frame amb = lattice.real_generators() * out.sublattice.cast<double>();
  out.subspace = out.sublattice.cols() == 0 ? RealSubspace() : RealSubspace::span(amb);
  return out;
}

}  // namespace

Eigen::MatrixXcd ExactCMatrix::to_complex() const {
  Eigen::MatrixXcd m(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).to_complex();
  return m;
}

ExactMatrix ExactCMatrix::to_real_columns() const {
  ExactMatrix m(2 * rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      m(2 * i, j) = (*this)(i, j).re;
      m(2 * i + 1, j) = (*this)(i, j).im;
    }
  return m;
}

ExactComplex exact_det3(const ExactCMatrix& m) {
  if (m.rows() != 3 || m.cols() != 3) throw InvalidInput("exact_det3 needs a 3x3 matrix");
  auto minor = [&](int r1, int r2, int c1, int c2) { return m(r1, c1) * m(r2, c2) - m(r1, c2) * m(r2, c1); };
  return m(0, 0) * minor(1, 2, 1, 2) - m(0, 1) * minor(1, 2, 0, 2) + m(0, 2) * minor(1, 2, 0, 1);
}

// ---------------------------------------------------------------- Lattice

Lattice::Lattice(const CMat36& generators) : generators_(generators) {
  for (int j = 0; j < 6; ++j) real_.col(j) = to_real(generators_.col(j));
  validate();
}

Lattice::Lattice(ExactCMatrix generators) {
  if (generators.rows() != 3 || generators.cols() != 6)
    throw InvalidInput("exact lattice needs a 3x6 generator matrix");
  generators_ = generators.to_complex();
  for (int j = 0; j < 6; ++j) real_.col(j) = to_real(generators_.col(j));
  exact_ = std::move(generators);
  validate();
}

void Lattice::validate() const {
  Mat6 normalized = real_;
  for (int j = 0; j < 6; ++j) {
    double n = normalized.col(j).norm();
    if (n == 0.0) throw InvalidInput("lattice generator is zero");
    normalized.col(j) /= n;
  }
  if (std::abs(normalized.determinant()) <= 1e-9)
    throw InvalidInput("lattice generators are not linearly independent over R");
  if (exact_ && rank(exact_real_generators()) != 6)
    throw InvalidInput("exact lattice generators are not linearly independent over R");
}

Lattice Lattice::gaussian(ArithmeticMode mode) {
  if (mode == ArithmeticMode::exact) {
    ExactCMatrix g(3, 6);
    for (int k = 0; k < 3; ++k) {
      g(k, k) = ExactComplex(QuadNumber(1));
      g(k, k + 3) = ExactComplex::i_unit();
    }
    return Lattice(std::move(g));
  }
  CMat36 g = CMat36::Zero();
  for (int k = 0; k < 3; ++k) {
    g(k, k) = 1.0;
    g(k, k + 3) = Complex(0.0, 1.0);
  }
  return Lattice(g);
}

const ExactCMatrix& Lattice::exact_generators() const {
  if (!exact_) throw InvalidInput("lattice is in floating mode");
  return *exact_;
}

ExactMatrix Lattice::exact_real_generators() const { return exact_generators().to_real_columns(); }

CVec3 Lattice::vector(const IntVec6& coeffs) const { return generators_ * coeffs.cast<Complex>(); }

Vec6 Lattice::real_vector(const IntVec6& coeffs) const { return real_ * coeffs.cast<double>(); }

ExactCMatrix Lattice::exact_vectors(const IntMatrix& coeff_rows) const {
  const ExactCMatrix& g = exact_generators();
  ExactCMatrix out(3, static_cast<int>(coeff_rows.rows()));
  for (int c = 0; c < out.cols(); ++c)
    for (int r = 0; r < 3; ++r) {
      ExactComplex s;
      for (int j = 0; j < 6; ++j) {
        std::int64_t k = coeff_rows(c, j);
        if (k != 0) s = s + QuadNumber(static_cast<long long>(k)) * g(r, j);
      }
      out(r, c) = s;
    }
  return out;
}

// ------------------------------------------------------------ RiemannForm

Eigen::MatrixXd alternating_gram(const Lattice& lattice, const CMat3& h) {
  Eigen::MatrixXd e(6, 6);
  const CMat36& g = lattice.generators();
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) e(i, j) = (g.col(i).adjoint() * h * g.col(j))(0, 0).imag();
  return e;
}

std::optional<IntMat6> exact_alternating_gram(const Lattice& lattice, const ExactCMatrix& h) {
  const ExactCMatrix& g = lattice.exact_generators();
  IntMat6 e;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      ExactComplex s;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          if (g(a, i).is_zero() || h(a, b).is_zero() || g(b, j).is_zero()) continue;
          s = s + g(a, i).conj() * h(a, b) * g(b, j);
        }
      if (!s.im.is_rational() || boost::multiprecision::denominator(s.im.rational_part()) != 1)
        return std::nullopt;
      e(i, j) = to_int64(boost::multiprecision::numerator(s.im.rational_part()));
    }
  return e;
}

RiemannForm RiemannForm::from_hermitian(const Lattice& lattice, const CMat3& h) {
  double scale = 1.0 + h.cwiseAbs().maxCoeff();
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw InvalidInput("Riemann form: H is not hermitian");
  Eigen::SelfAdjointEigenSolver<CMat3> es(h, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 1e-9) throw InvalidInput("Riemann form: H is not positive definite");
  Eigen::MatrixXd e = alternating_gram(lattice, h);
  RiemannForm f;
  f.h_ = h;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      double r = std::round(e(i, j));
      if (std::abs(e(i, j) - r) > 1e-9)
        throw InvalidInput("Riemann form: Im H is not integral on the lattice");
      f.e_(i, j) = static_cast<std::int64_t>(r);
    }
  for (int i = 0; i < 6; ++i) {
    if (f.e_(i, i) != 0) throw InvalidInput("Riemann form: E is not alternating");
    for (int j = 0; j < i; ++j)
      if (f.e_(i, j) != -f.e_(j, i)) throw InvalidInput("Riemann form: E is not alternating");
  }
  return f;
}

RiemannForm RiemannForm::from_hermitian(const Lattice& lattice, const ExactCMatrix& h) {
  if (h.rows() != 3 || h.cols() != 3) throw InvalidInput("Riemann form: H must be 3x3");
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (!(h(i, j) == h(j, i).conj())) throw InvalidInput("Riemann form: H is not hermitian");
  // Sylvester: leading principal minors of a hermitian matrix are real.
  ExactComplex m1 = h(0, 0);
  ExactComplex m2 = h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0);
  ExactComplex m3 = exact_det3(h);
  if (m1.re.sign() <= 0 || m2.re.sign() <= 0 || m3.re.sign() <= 0)
    throw InvalidInput("Riemann form: H is not positive definite");
  auto e = exact_alternating_gram(lattice, h);
  if (!e) throw InvalidInput("Riemann form: Im H is not integral on the lattice");
  RiemannForm f;
  f.h_ = h.to_complex();
  f.exact_h_ = h;
  f.e_ = *e;
  return f;
}

RiemannForm RiemannForm::standard(const Lattice& lattice) {
  if (lattice.is_exact()) {
    ExactCMatrix h(3, 3);
    for (int k = 0; k < 3; ++k) h(k, k) = ExactComplex(QuadNumber(1));
    return from_hermitian(lattice, h);
  }
  return from_hermitian(lattice, CMat3::Identity());
}

Mat6 RiemannForm::real_metric() const {
  Mat6 m;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      CVec3 za = to_complex(Vec6::Unit(a));
      CVec3 zb = to_complex(Vec6::Unit(b));
      m(a, b) = (za.adjoint() * h_ * zb)(0, 0).real();
    }
  return m;
}

Mat6 RiemannForm::real_alternating() const {
  Mat6 m;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      CVec3 za = to_complex(Vec6::Unit(a));
      CVec3 zb = to_complex(Vec6::Unit(b));
      m(a, b) = (za.adjoint() * h_ * zb)(0, 0).imag();
    }
  return m;
}

// -------------------------------------------------------------- Submodule

Submodule::Submodule(const IntMatrix& generators) {
  if (generators.cols() != 6) throw InvalidInput("submodule generators must have 6 columns");
  hnf_ = hermite_normal_form(generators);
  if (hnf_.rows() == 0) throw InvalidInput("submodule has rank 0");
}

RealSubspace real_span(const Lattice& lattice, const Submodule& sub) {
  Frame vectors = lattice.real_generators() * sub.hnf().transpose().cast<double>();
  return RealSubspace::span(vectors);
}

int complex_span_dim(const Lattice& lattice, const Submodule& sub) {
  if (lattice.is_exact()) {
    ExactMatrix f = lattice.exact_real_generators() * integer_to_exact(sub.hnf().transpose());
    ExactMatrix both(6, 2 * f.cols());
    for (int c = 0; c < f.cols(); ++c)
      for (int k = 0; k < 3; ++k) {
        both(2 * k, c) = f(2 * k, c);
        both(2 * k + 1, c) = f(2 * k + 1, c);
        both(2 * k, f.cols() + c) = -f(2 * k + 1, c);
        both(2 * k + 1, f.cols() + c) = f(2 * k, c);
      }
    return rank(both) / 2;
  }
  Eigen::MatrixXcd f = lattice.generators() * sub.hnf().transpose().cast<Complex>();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(f);
  const auto& s = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > 1e-9 * s(0)) ++r;
  return r;
}

TotallyRealResult is_totally_real(const Lattice& lattice, const Submodule& sub) {
  if (sub.rank() != 3) throw InvalidInput("is_totally_real needs a rank-3 submodule");
  CMat3 f = lattice.generators() * sub.hnf().transpose().cast<Complex>();
  TotallyRealResult out;
  out.det = f.determinant();
  double norms = f.col(0).norm() * f.col(1).norm() * f.col(2).norm();
  out.normalized_det = std::abs(out.det) / norms;
  if (lattice.is_exact()) {
    ExactCMatrix fe = lattice.exact_vectors(sub.hnf());
    out.exact_det = exact_det3(fe);
    out.totally_real = !out.exact_det->is_zero();
  } else {
    out.totally_real = out.normalized_det >= kDetZeroTolerance;
  }
  return out;
}

// -------------------------------------------------------- rational closure

ClosureResult rational_closure(const RealSubspace& v, const Lattice& lattice, const ClosureOptions& options) {
  if (v.dim() == 0) throw InvalidInput("rational_closure: input subspace is zero");
  if (!(options.accept_threshold < options.reject_threshold))
    throw InvalidInput("rational_closure: accept threshold must be below the reject threshold");
  const int k = v.dim();

  // Orthonormal basis of V in generator coordinates.
  LMat6 gen = lattice.real_generators().cast<long double>();
  LFrame coeff = gen.fullPivLu().solve(LFrame(v.basis().cast<long double>()));
  Eigen::HouseholderQR<LFrame> qr(coeff);
  LFrame basis = qr.householderQ() * LFrame::Identity(6, k);

  IntMatrix rows = IntMatrix::Identity(6, 6);
  IntMatrix accepted(0, 6);
  int clean_level = -1;
  for (int level = options.min_level; level <= options.max_level; ++level) {
    long double weight = std::pow(10.0L, static_cast<long double>(level));
    LongMatrix embedding(6 + k, 6);
    embedding.topRows(6) = LongMatrix::Identity(6, 6);
    embedding.bottomRows(k) = weight * basis.transpose();
    rows = lll_reduce(rows, embedding);

    IntMatrix relations(0, 6);
    bool ambiguous = false;
    for (Eigen::Index r = 0; r < 6; ++r) {
      Eigen::Matrix<long double, 6, 1> m = rows.row(r).transpose().cast<long double>();
      long double residual = (basis.transpose() * m).norm();
      long double height = m.cwiseAbs().maxCoeff();
      if (height > options.height_bound || residual > options.reject_threshold) continue;
      if (residual < options.accept_threshold) {
        relations.conservativeResize(relations.rows() + 1, 6);
        relations.row(relations.rows() - 1) = rows.row(r);
      } else {
        ambiguous = true;
      }
    }
    if (ambiguous || relations.rows() < accepted.rows()) {
      if (clean_level < 0)
        throw PrecisionInsufficient(
            "rational_closure: candidate relation between the accept and reject thresholds");
      break;
    }
    accepted = relations;
    clean_level = level;
    // The closure cannot be smaller than V itself.
    if (accepted.rows() == 6 - k) break;
  }

  ClosureResult out = closure_from_relations(accepted, lattice);
  out.heuristic = true;
  out.level = clean_level;
  return out;
}

ClosureResult rational_closure_exact(const ExactMatrix& spanning, const Lattice& lattice) {
  if (spanning.rows() != 6) throw InvalidInput("rational_closure_exact: vectors must live in R^6");
  ExactMatrix coeff = solve(lattice.exact_real_generators(), spanning);
  // A vector p + q sqrt(d) with p, q rational: the rational subspaces containing
  // it are exactly those containing p and q.
  std::vector<std::vector<Rational>> parts;
  for (int c = 0; c < coeff.cols(); ++c) {
    std::vector<Rational> p(6), q(6);
    bool has_q = false;
    for (int r = 0; r < 6; ++r) {
      p[r] = coeff(r, c).rational_part();
      q[r] = coeff(r, c).irrational_part();
      has_q = has_q || q[r] != 0;
    }
    parts.push_back(p);
    if (has_q) parts.push_back(q);
  }
  IntMatrix span_rows = clear_denominators(parts);
  if (integer_rank(span_rows) == 0) throw InvalidInput("rational_closure_exact: input subspace is zero");
  IntMatrix relations = integer_kernel(span_rows).transpose();
  ClosureResult out = closure_from_relations(relations, lattice);
  out.heuristic = false;
  return out;
}

int closure_dim_complex_line(const CVec3& v, const Lattice& lattice, const ClosureOptions& options) {
  if (v.norm() == 0.0) throw InvalidInput("closure_dim_complex_line: zero direction");
  Frame f(6, 2);
  f.col(0) = to_real(v);
  f.col(1) = to_real(Complex(0.0, 1.0) * v);
  return rational_closure(RealSubspace::span(f), lattice, options).subspace.dim();
}

int closure_dim_complex_line(const ExactCMatrix& v, const Lattice& lattice) {
  if (v.rows() != 3 || v.cols() != 1) throw InvalidInput("closure_dim_complex_line: need a 3x1 vector");
  ExactCMatrix both(3, 2);
  bool nonzero = false;
  for (int r = 0; r < 3; ++r) {
    both(r, 0) = v(r, 0);
    both(r, 1) = ExactComplex::i_unit() * v(r, 0);
    nonzero = nonzero || !v(r, 0).is_zero();
  }
  if (!nonzero) throw InvalidInput("closure_dim_complex_line: zero direction");
  return rational_closure_exact(both.to_real_columns(), lattice).subspace.dim();
}

}  // namespace brody
