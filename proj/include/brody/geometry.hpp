#pragma once

#include <optional>
#include <vector>

#include "brody/real_subspace.hpp"
#include "brody/types.hpp"

namespace brody {

class RiemannForm;

/// Angle in [0, pi/2] between two nonzero vectors, folded by |<v, w>|.
double vector_angle(const Vec6& v, const Vec6& w);
/// Same, for the real part of the hermitian form H.
double vector_angle(const Vec6& v, const Vec6& w, const RiemannForm& form);

/// Principal angles in ascending order; min(dim U, dim W) of them.
std::vector<double> principal_angles(const RealSubspace& u, const RealSubspace& w);
// Smallest principal angle.
double subspace_angle(const RealSubspace& u, const RealSubspace& w);
// Largest principal angle; requires dim U == dim W.
double max_principal_angle(const RealSubspace& u, const RealSubspace& w);
// Angle between a vector and its projection onto W.
double vector_subspace_angle(const Vec6& v, const RealSubspace& w);

/// Complex line through a unit direction whose first nonzero coordinate is
/// real and positive.
class ComplexLine {
 public:
  explicit ComplexLine(const CVec3& direction);
  const CVec3& direction() const { return direction_; }
  RealSubspace as_real_plane() const;

 private:
  CVec3 direction_;
};

// Scales z to unit norm with its first nonzero coordinate real positive.
CVec3 canonical_phase(const CVec3& z);

struct NormalForm {
  CVec3 a;
  CVec3 b;
  CVec3 c;
  double lambda = 0.0;
};

/// For a 4-plane W with W ∩ iW a complex line: orthonormal A, B, C with
/// W = span{A, iA, B, C + lambda iB}. Returns nullopt when W is a complex
/// 2-plane.
std::optional<NormalForm> normal_form(const RealSubspace& w);

/// Complex line at subspace angle >= pi/4 from the 4-plane W.
ComplexLine choose_line(const RealSubspace& w);

}  // namespace brody
