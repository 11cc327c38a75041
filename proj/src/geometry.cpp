#include "brody/geometry.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "brody/error.hpp"
#include "brody/lattice.hpp"

namespace brody {

namespace {

double folded_angle(double dot, double nv, double nw) {
  if (nv <= 0.0 || nw <= 0.0) throw InvalidInput("angle with a zero vector");
  double c = std::min(1.0, std::abs(dot) / std::sqrt(nv * nw));
  return std::acos(c);
}

Frame complex_pair(const CVec3& z) {
  Frame f(6, 2);
  f.col(0) = to_real(z);
  f.col(1) = to_real(Complex(0.0, 1.0) * z);
  return f;
}

// Unit vector with its largest-magnitude coordinate positive.
Vec6 sign_canonical(Vec6 x) {
  Eigen::Index k;
  x.cwiseAbs().maxCoeff(&k);
  if (x(k) < 0) x = -x;
  return x;
}

}  // namespace

double vector_angle(const Vec6& v, const Vec6& w) {
  return folded_angle(v.dot(w), v.squaredNorm(), w.squaredNorm());
}

double vector_angle(const Vec6& v, const Vec6& w, const RiemannForm& form) {
  Mat6 g = form.real_metric();
  return folded_angle(v.dot(g * w), v.dot(g * v), w.dot(g * w));
}

std::vector<double> principal_angles(const RealSubspace& u, const RealSubspace& w) {
  if (u.dim() == 0 || w.dim() == 0) throw InvalidInput("principal angles need nonzero subspaces");
  const RealSubspace& small = u.dim() <= w.dim() ? u : w;
  const RealSubspace& large = u.dim() <= w.dim() ? w : u;
  const int k = small.dim();
  Eigen::MatrixXd cross = large.basis().transpose() * small.basis();
  Eigen::VectorXd cosines = Eigen::JacobiSVD<Eigen::MatrixXd>(cross).singularValues();  // descending
  Eigen::MatrixXd resid = small.basis() - large.basis() * cross;
  Eigen::VectorXd sines = Eigen::JacobiSVD<Eigen::MatrixXd>(resid).singularValues();
  std::vector<double> out(k);
  for (int i = 0; i < k; ++i) {
    double c = i < cosines.size() ? cosines(i) : 0.0;
    double s = sines(k - 1 - i);
    out[i] = std::atan2(s, c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double subspace_angle(const RealSubspace& u, const RealSubspace& w) { return principal_angles(u, w).front(); }

double max_principal_angle(const RealSubspace& u, const RealSubspace& w) {
  if (u.dim() != w.dim()) throw InvalidInput("max_principal_angle needs equal dimensions");
  return principal_angles(u, w).back();
}

double vector_subspace_angle(const Vec6& v, const RealSubspace& w) {
  if (v.norm() == 0.0) throw InvalidInput("angle with a zero vector");
  if (w.dim() == 0) throw InvalidInput("angle with the zero subspace");
  Eigen::VectorXd coords = w.basis().transpose() * v;
  Vec6 perp = v - w.basis() * coords;
  return std::atan2(perp.norm(), coords.norm());
}

CVec3 canonical_phase(const CVec3& z) {
  double n = z.norm();
  if (n == 0.0) throw InvalidInput("complex line through the zero vector");
  // Already canonical inputs are returned bit for bit, so serialized lines reload unchanged.
  for (int k = 0; k < 3; ++k) {
    if (std::abs(z(k)) > 1e-9) {
      if (z(k).imag() == 0.0 && z(k).real() > 0.0 && std::abs(n - 1.0) < 1e-14) return z;
      break;
    }
  }
  CVec3 u = z / n;
  for (int k = 0; k < 3; ++k) {
    if (std::abs(u(k)) > 1e-9) {
      u *= std::conj(u(k)) / std::abs(u(k));
      u(k) = Complex(u(k).real(), 0.0);
      break;
    }
  }
  return u;
}

ComplexLine::ComplexLine(const CVec3& direction) : direction_(canonical_phase(direction)) {}

RealSubspace ComplexLine::as_real_plane() const { return RealSubspace::from_orthonormal(complex_pair(direction_)); }

std::optional<NormalForm> normal_form(const RealSubspace& w) {
  if (w.dim() != 4) throw InvalidInput("normal_form needs a 4-dimensional subspace");
  RealSubspace line = intersection(w, w.times_i(), 1e-9);
  if (line.dim() == 4) return std::nullopt;
  if (line.dim() != 2) throw InternalInvariant("W ∩ iW has unexpected dimension " + std::to_string(line.dim()));

  NormalForm nf;
  nf.a = canonical_phase(to_complex(line.basis().col(0)));
  Frame ap = complex_pair(nf.a);
  Frame rest = w.basis() - ap * (ap.transpose() * w.basis());
  RealSubspace wp = RealSubspace::span(rest);
  if (wp.dim() != 2) throw InternalInvariant("normal form: complement of W ∩ iW is not a plane");

  // B: projection of the best-aligned coordinate axis (first index on ties).
  Mat6 p = wp.projector();
  int best = 0;
  double best_norm = -1.0;
  for (int k = 0; k < 6; ++k) {
    double n = p.col(k).norm();
    if (n > best_norm + 1e-12) {
      best_norm = n;
      best = k;
    }
  }
  Vec6 b = p.col(best) / best_norm;
  Eigen::Vector2d coords = wp.basis().transpose() * b;
  Vec6 u = wp.basis() * Eigen::Vector2d(-coords(1), coords(0));
  Vec6 ib = times_i(b);
  double mu = ib.dot(u);
  Vec6 r = u - mu * ib;
  double rn = r.norm();
  if (rn < 1e-12) throw InternalInvariant("normal form: W is numerically a complex 2-plane");
  Vec6 c = r / rn;
  double lambda = mu / rn;
  Vec6 cc = sign_canonical(c);
  if (cc.dot(c) < 0) lambda = -lambda;

  nf.b = to_complex(b);
  nf.c = to_complex(cc);
  nf.lambda = lambda;
  return nf;
}

ComplexLine choose_line(const RealSubspace& w) {
  auto nf = normal_form(w);
  if (!nf) return ComplexLine(to_complex(w.orthogonal_complement().basis().col(0)));
  const Complex i(0.0, 1.0);
  if (std::abs(nf->lambda) > 1.0) return ComplexLine(nf->c);
  if (nf->lambda >= 0.0) return ComplexLine(nf->b + i * nf->c);
  return ComplexLine(nf->b - i * nf->c);
}

}  // namespace brody
