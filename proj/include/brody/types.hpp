#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

namespace brody {

using Complex = std::complex<double>;

using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using CVec3 = Eigen::Matrix<Complex, 3, 1>;
using CMat3 = Eigen::Matrix<Complex, 3, 3>;
using CMat36 = Eigen::Matrix<Complex, 3, 6>;
// Columns span a real subspace of R^6.
using Frame = Eigen::Matrix<double, 6, Eigen::Dynamic>;

using IntVec6 = Eigen::Matrix<std::int64_t, 6, 1>;
using IntMat6 = Eigen::Matrix<std::int64_t, 6, 6>;
using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// C^3 is identified with R^6 as (Re z1, Im z1, Re z2, Im z2, Re z3, Im z3).
inline Vec6 to_real(const CVec3& z) {
  Vec6 x;
  for (int k = 0; k < 3; ++k) {
    x(2 * k) = z(k).real();
    x(2 * k + 1) = z(k).imag();
  }
  return x;
}

inline CVec3 to_complex(const Vec6& x) {
  CVec3 z;
  for (int k = 0; k < 3; ++k) z(k) = Complex(x(2 * k), x(2 * k + 1));
  return z;
}

// Multiplication by i on R^6.
inline const Mat6& complex_structure() {
  static const Mat6 J = [] {
    Mat6 m = Mat6::Zero();
    for (int k = 0; k < 3; ++k) {
      m(2 * k, 2 * k + 1) = -1.0;
      m(2 * k + 1, 2 * k) = 1.0;
    }
    return m;
  }();
  return J;
}

inline Vec6 times_i(const Vec6& x) { return complex_structure() * x; }

}  // namespace brody
