#include "brody/deformation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "brody/error.hpp"

namespace brody {

namespace {

CMat3 random_symmetric(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::Matrix3d a;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) a(i, j) = a(j, i) = u(rng);
  return a.cast<Complex>();
}

bool imaginary_part_positive(const CMat3& omega) {
  Eigen::Matrix3d y = omega.imag();
  return Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(y, Eigen::EigenvaluesOnly).eigenvalues().minCoeff() > 1e-3;
}

IntMatrix as_row(const IntVec6& x) { return x.transpose(); }

// Real-coefficient basis (columns, length 3) of {a : sum a_j s_j in S ∩ iS},
// where s_j are the generators of the submodule.
Eigen::MatrixXd line_coefficients(const Lattice& lattice, const Submodule& sub) {
  Frame f = lattice.real_generators() * sub.hnf().transpose().cast<double>();
  Eigen::MatrixXd m(6, 6);
  m.leftCols(3) = f;
  m.rightCols(3) = -complex_structure() * f;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  std::vector<int> null_cols;
  for (int i = 0; i < 6; ++i)
    if (s(i) <= 1e-9 * s(0)) null_cols.push_back(i);
  Eigen::MatrixXd out(3, null_cols.size());
  for (std::size_t k = 0; k < null_cols.size(); ++k) out.col(k) = svd.matrixV().col(null_cols[k]).head(3);
  return out;
}

ExactMatrix exact_line_coefficients(const Lattice& lattice, const Submodule& sub) {
  ExactMatrix gens = lattice.exact_real_generators();
  ExactMatrix m(6, 6);
  for (int r = 0; r < 6; ++r)
    for (int j = 0; j < 3; ++j) {
      QuadNumber acc;
      for (int c = 0; c < 6; ++c)
        if (sub.hnf()(j, c) != 0) acc += QuadNumber(static_cast<long long>(sub.hnf()(j, c))) * gens(r, c);
      m(r, j) = acc;
    }
  // -J f: (x, y) -> (y, -x) per complex coordinate.
  for (int k = 0; k < 3; ++k)
    for (int j = 0; j < 3; ++j) {
      m(2 * k, 3 + j) = m(2 * k + 1, j);
      m(2 * k + 1, 3 + j) = -m(2 * k, j);
    }
  return nullspace(m);
}

}  // namespace

PeriodSample period_lattice(const CMat3& omega) {
  if ((omega - omega.transpose()).cwiseAbs().maxCoeff() > 1e-12) throw InvalidInput("period matrix must be symmetric");
  if (!imaginary_part_positive(omega)) throw InvalidInput("Im of the period matrix must be positive definite");
  CMat36 g;
  g.leftCols(3) = CMat3::Identity();
  g.rightCols(3) = omega;
  Lattice lattice(g);
  CMat3 h = Eigen::Matrix3d(omega.imag()).inverse().cast<Complex>();
  RiemannForm form = RiemannForm::from_hermitian(lattice, h);
  return {omega, lattice, form};
}

PeriodSample sample_period_matrix(std::uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    CMat3 a = random_symmetric(rng);
    CMat3 b = random_symmetric(rng);
    CMat3 omega = Complex(0.0, 1.0) * CMat3::Identity() + scale * (a + Complex(0.0, 1.0) * b);
    if (imaginary_part_positive(omega)) return period_lattice(omega);
  }
  throw CapacityExceeded("period matrix sampling: no positive definite sample in 100 attempts");
}

DegenerateSample sample_degenerate_submodule(std::uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CMat3 omega;
  for (int attempt = 0;; ++attempt) {
    if (attempt == 100) throw CapacityExceeded("split period matrix sampling failed");
    CMat3 a = random_symmetric(rng);
    CMat3 b = random_symmetric(rng);
    omega = Complex(0.0, 1.0) * CMat3::Identity() + scale * (a + Complex(0.0, 1.0) * b);
    omega(0, 1) = omega(1, 0) = omega(0, 2) = omega(2, 0) = 0.0;
    if (imaginary_part_positive(omega)) break;
  }
  PeriodSample sample = period_lattice(omega);
  std::uniform_int_distribution<int> coeff(-2, 2);
  IntMatrix rows = IntMatrix::Zero(3, 6);
  rows(0, 0) = 1;
  rows(1, 3) = 1;
  do {
    for (int c = 0; c < 6; ++c) rows(2, c) = coeff(rng);
  } while (integer_rank(rows) != 3);
  return {std::move(sample), Submodule(rows)};
}

IntVec6 kernel_vector(const Submodule& sub, const RiemannForm& form) {
  if (sub.rank() != 3) throw InvalidInput("kernel_vector needs a rank-3 submodule");
  const IntMatrix& s = sub.hnf();
  IntMatrix m = s * form.alternating() * s.transpose();
  std::int64_t a = m(0, 1), b = m(0, 2), c = m(1, 2);
  IntMatrix k(1, 3);
  if (a == 0 && b == 0 && c == 0) {
    k << 1, 0, 0;
  } else {
    k << c, -b, a;
    k = primitive_row(k);
  }
  IntMatrix v = k * s;
  IntVec6 out = v.row(0).transpose();
  for (int i = 0; i < 6; ++i)
    if (out(i) != 0) {
      if (out(i) < 0) out = -out;
      break;
    }
  return out;
}

WConditions check_w(const Lattice& lattice, const RiemannForm& form, const Submodule& sub, const IntVec6& v,
                    const IntVec6& w) {
  WConditions out;
  out.pairs_with_v = form.pairing(v, w) != 0;
  if (w.isZero()) return out;

  IntMatrix extended(sub.rank() + 1, 6);
  extended.topRows(sub.rank()) = sub.hnf();
  extended.row(sub.rank()) = w.transpose();
  out.leaves_complex_span = complex_span_dim(lattice, Submodule(extended)) > complex_span_dim(lattice, sub);

  // E(w, s_j) for the submodule generators.
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> ew = sub.hnf() * form.alternating().transpose() * w;
  if (ew.isZero()) return out;
  if (lattice.is_exact()) {
    ExactMatrix null = exact_line_coefficients(lattice, sub);
    for (int col = 0; col < null.cols() && !out.nonzero_on_line; ++col) {
      QuadNumber s;
      for (int j = 0; j < 3; ++j) s += QuadNumber(static_cast<long long>(ew(j))) * null(j, col);
      out.nonzero_on_line = !s.is_zero();
    }
  } else {
    Eigen::MatrixXd null = line_coefficients(lattice, sub);
    Eigen::VectorXd e = ew.cast<double>();
    for (int col = 0; col < null.cols(); ++col)
      if (std::abs(e.dot(null.col(col))) > 1e-9 * e.norm() * null.col(col).norm()) out.nonzero_on_line = true;
  }
  return out;
}

IntVec6 find_w(const Lattice& lattice, const RiemannForm& form, const Submodule& sub, const IntVec6& v, int height) {
  if (height < 1) throw InvalidInput("find_w height must be at least 1");
  for (int h = 1; h <= height; ++h) {
    IntVec6 x = IntVec6::Constant(-h);
    while (true) {
      if (x.cwiseAbs().maxCoeff() == h && form.pairing(v, x) != 0 && check_w(lattice, form, sub, v, x).all())
        return x;
      int k = 5;
      while (k >= 0 && x(k) == h) x(k--) = -h;
      if (k < 0) break;
      ++x(k);
    }
  }
  throw NotFound("find_w: no admissible w with coefficients bounded by " + std::to_string(height));
}

DeformationData make_deformation(const Lattice& lattice, const RiemannForm& form, const IntVec6& v,
                                 const IntVec6& w, double t, std::optional<QuadNumber> exact_t) {
  std::int64_t evw = form.pairing(v, w);
  if (evw == 0) throw InvalidInput("deformation needs E(v, w) != 0");
  DeformationData d;
  d.v = v;
  d.w = w;
  d.t = t;
  if (lattice.is_exact()) d.exact_t = exact_t ? std::move(exact_t) : QuadNumber::from_double(t);
  for (int i = 0; i < 6; ++i)
    d.coefficients.push_back(Rational(form.pairing(IntVec6::Unit(i), w)) / evw);
  Vec6 n = form.real_alternating() * lattice.real_vector(w);
  d.k_projector = Mat6::Identity() - n * n.transpose() / n.squaredNorm();
  return d;
}

Lattice deform(const Lattice& lattice, const DeformationData& data) {
  if (lattice.is_exact()) {
    if (!data.exact_t) throw InvalidInput("exact deformation needs an exact parameter");
    ExactCMatrix w = lattice.exact_vectors(as_row(data.w));
    ExactCMatrix g = lattice.exact_generators();
    for (int i = 0; i < 6; ++i) {
      if (data.coefficients[i] == 0) continue;
      QuadNumber scale = QuadNumber(data.coefficients[i]) * *data.exact_t;
      for (int r = 0; r < 3; ++r) g(r, i) = g(r, i) + scale * w(r, 0);
    }
    return Lattice(std::move(g));
  }
  CVec3 w = lattice.vector(data.w);
  CMat36 g = lattice.generators();
  for (int i = 0; i < 6; ++i) g.col(i) += (data.coefficients[i].convert_to<double>() * data.t) * w;
  return Lattice(g);
}

bool DeformationReport::as_expected() const {
  if (already_totally_real) return true;
  for (const auto& e : entries) {
    if (!e.isometry) return false;
    if (e.result.totally_real != (e.t != 0.0)) return false;
  }
  return true;
}

DeformationReport check_deformation(const Lattice& lattice, const RiemannForm& form, const Submodule& sub,
                                    const std::vector<double>& ts, int height) {
  DeformationReport report;
  if (is_totally_real(lattice, sub).totally_real) {
    report.already_totally_real = true;
    return report;
  }
  report.v = kernel_vector(sub, form);
  report.w = find_w(lattice, form, sub, report.v, height);
  for (double t : ts) {
    DeformationData data = make_deformation(lattice, form, report.v, report.w, t);
    Lattice moved = deform(lattice, data);
    DeformationEntry entry;
    entry.t = t;
    entry.result = is_totally_real(moved, sub);
    if (moved.is_exact() && form.exact_hermitian()) {
      auto gram = exact_alternating_gram(moved, *form.exact_hermitian());
      entry.isometry = gram && *gram == form.alternating();
      entry.isometry_error = entry.isometry ? 0.0 : 1.0;
    } else {
      Eigen::MatrixXd gram = alternating_gram(moved, form.hermitian());
      entry.isometry_error = (gram - form.alternating().cast<double>()).cwiseAbs().maxCoeff();
      entry.isometry = entry.isometry_error < 1e-9;
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

std::vector<IntMatrix> enumerate_submodules(int height, std::size_t max_count) {
  if (height < 1) throw InvalidInput("enumerate_submodules height must be at least 1");
  std::vector<IntMatrix> out;
  struct Slot {
    int row, col;
    std::int64_t lo, hi;
  };
  for (int p0 = 0; p0 < 6; ++p0)
    for (int p1 = p0 + 1; p1 < 6; ++p1)
      for (int p2 = p1 + 1; p2 < 6; ++p2) {
        const int piv[3] = {p0, p1, p2};
        for (int d0 = 1; d0 <= height; ++d0)
          for (int d1 = 1; d1 <= height; ++d1)
            for (int d2 = 1; d2 <= height; ++d2) {
              const int dd[3] = {d0, d1, d2};
              IntMatrix base = IntMatrix::Zero(3, 6);
              std::vector<Slot> slots;
              for (int r = 0; r < 3; ++r) {
                base(r, piv[r]) = dd[r];
                for (int c = piv[r] + 1; c < 6; ++c) {
                  int above = -1;
                  for (int j = r + 1; j < 3; ++j)
                    if (piv[j] == c) above = j;
                  if (above >= 0) {
                    if (dd[above] > 1) slots.push_back({r, c, 0, dd[above] - 1});
                  } else {
                    slots.push_back({r, c, -height, height});
                  }
                }
              }
              for (const auto& s : slots) base(s.row, s.col) = s.lo;
              while (true) {
                if (out.size() >= max_count)
                  throw CapacityExceeded("enumerate_submodules: more than " + std::to_string(max_count) + " submodules");
                out.push_back(base);
                std::size_t k = slots.size();
                while (k > 0 && base(slots[k - 1].row, slots[k - 1].col) == slots[k - 1].hi) {
                  base(slots[k - 1].row, slots[k - 1].col) = slots[k - 1].lo;
                  --k;
                }
                if (k == 0) break;
                ++base(slots[k - 1].row, slots[k - 1].col);
              }
            }
      }
  return out;
}

ScanReport genericity_scan(const Lattice& lattice, int height, std::size_t max_count) {
  ScanReport report;
  report.height = height;
  report.min_normalized_det = std::numeric_limits<double>::infinity();
  for (const IntMatrix& m : enumerate_submodules(height, max_count)) {
    Submodule sub(m);
    TotallyRealResult r = is_totally_real(lattice, sub);
    ++report.count;
    if (!r.totally_real) report.failures.push_back(m);
    if (r.normalized_det < report.min_normalized_det) {
      report.min_normalized_det = r.normalized_det;
      report.argmin = m;
    }
  }
  return report;
}

}  // namespace brody
