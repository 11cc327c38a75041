#pragma once

#include "brody/types.hpp"

namespace brody {

/// Real linear subspace of R^6 (= C^3) held by an orthonormal basis.
class RealSubspace {
 public:
  // The zero subspace.
  RealSubspace() : basis_(6, 0) {}

  /// Orthonormalizes the columns of `vectors`; directions whose singular value
  /// falls below `rel_tol` times the largest are dropped.
  static RealSubspace span(const Frame& vectors, double rel_tol = 1e-9);
  /// Wraps an already orthonormal basis (checked to 1e-10).
  static RealSubspace from_orthonormal(const Frame& basis);
  static RealSubspace whole_space();

  int dim() const { return static_cast<int>(basis_.cols()); }
  const Frame& basis() const { return basis_; }
  Mat6 projector() const { return basis_ * basis_.transpose(); }
  Frame complement_basis() const;
  RealSubspace orthogonal_complement() const;
  // i * U.
  RealSubspace times_i() const;
  // Distance from v to the subspace.
  double residual(const Vec6& v) const;

 private:
  explicit RealSubspace(Frame basis) : basis_(std::move(basis)) {}
  Frame basis_;
};

// Spectral norm of the difference of the orthogonal projectors.
double projector_distance(const RealSubspace& a, const RealSubspace& b);

RealSubspace subspace_sum(const RealSubspace& a, const RealSubspace& b);

/// Intersection computed from the sines of the principal angles: the directions
/// of `b` whose distance to `a` is below `tol` (absolute, unit vectors).
RealSubspace intersection(const RealSubspace& a, const RealSubspace& b, double tol = 1e-9);

}  // namespace brody
