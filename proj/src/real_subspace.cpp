#include "brody/real_subspace.hpp"

#include <Eigen/SVD>

#include "brody/error.hpp"

namespace brody {

RealSubspace RealSubspace::span(const Frame& vectors, double rel_tol) {
  if (vectors.cols() == 0) return RealSubspace();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(vectors, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return RealSubspace();
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > rel_tol * s(0)) ++r;
  return RealSubspace(svd.matrixU().leftCols(r));
}

RealSubspace RealSubspace::from_orthonormal(const Frame& basis) {
  Eigen::MatrixXd gram = basis.transpose() * basis;
  if ((gram - Eigen::MatrixXd::Identity(basis.cols(), basis.cols())).cwiseAbs().maxCoeff() > 1e-10)
    throw InvalidInput("basis is not orthonormal");
  return RealSubspace(basis);
}

RealSubspace RealSubspace::whole_space() { return RealSubspace(Frame(Mat6::Identity())); }

Frame RealSubspace::complement_basis() const {
  if (dim() == 0) return Mat6::Identity();
  if (dim() == 6) return Frame(6, 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(basis_), Eigen::ComputeFullU);
  return svd.matrixU().rightCols(6 - dim());
}

RealSubspace RealSubspace::orthogonal_complement() const { return RealSubspace(complement_basis()); }

RealSubspace RealSubspace::times_i() const { return RealSubspace(Frame(complex_structure() * basis_)); }

double RealSubspace::residual(const Vec6& v) const {
  return (v - basis_ * (basis_.transpose() * v)).norm();
}

double projector_distance(const RealSubspace& a, const RealSubspace& b) {
  Mat6 d = a.projector() - b.projector();
  Eigen::SelfAdjointEigenSolver<Mat6> es(d, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

RealSubspace subspace_sum(const RealSubspace& a, const RealSubspace& b) {
  Frame f(6, a.dim() + b.dim());
  f << a.basis(), b.basis();
  return RealSubspace::span(f);
}

RealSubspace intersection(const RealSubspace& a, const RealSubspace& b, double tol) {
  if (a.dim() == 0 || b.dim() == 0) return RealSubspace();
  Eigen::MatrixXd off = b.basis() - a.basis() * (a.basis().transpose() * b.basis());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(off, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  // Singular values come sorted descending; padded with zeros when off has
  // fewer rows than columns (never here: 6 rows).
  Eigen::Index keep = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) < tol) ++keep;
  if (keep == 0) return RealSubspace();
  Frame dirs = b.basis() * svd.matrixV().rightCols(keep);
  return RealSubspace::span(dirs);
}

}  // namespace brody
