#pragma once

#include <optional>
#include <vector>

#include "brody/exact_linalg.hpp"
#include "brody/integer.hpp"
#include "brody/quadratic.hpp"
#include "brody/real_subspace.hpp"
#include "brody/types.hpp"

namespace brody {

enum class ArithmeticMode { floating, exact };

/// Dense complex matrix with entries in Q(sqrt(d)) + i Q(sqrt(d)).
class ExactCMatrix {
 public:
  ExactCMatrix() = default;
  ExactCMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  ExactComplex& operator()(int r, int c) { return data_[r * cols_ + c]; }
  const ExactComplex& operator()(int r, int c) const { return data_[r * cols_ + c]; }

  Eigen::MatrixXcd to_complex() const;
  // Realification of the columns, 2*rows x cols, interleaved (Re, Im).
  ExactMatrix to_real_columns() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<ExactComplex> data_;
};

ExactComplex exact_det3(const ExactCMatrix& m);

/// A full lattice in C^3 given by six generators (the columns of a 3x6
/// period matrix).
class Lattice {
 public:
  explicit Lattice(const CMat36& generators);
  explicit Lattice(ExactCMatrix generators);

  // Generators e1, e2, e3, i*e1, i*e2, i*e3.
  static Lattice gaussian(ArithmeticMode mode = ArithmeticMode::floating);

  ArithmeticMode mode() const { return exact_ ? ArithmeticMode::exact : ArithmeticMode::floating; }
  bool is_exact() const { return exact_.has_value(); }

  const CMat36& generators() const { return generators_; }
  const ExactCMatrix& exact_generators() const;
  // Column j is generator j in R^6.
  const Mat6& real_generators() const { return real_; }
  ExactMatrix exact_real_generators() const;

  CVec3 vector(const IntVec6& coeffs) const;
  Vec6 real_vector(const IntVec6& coeffs) const;
  ExactCMatrix exact_vectors(const IntMatrix& coeff_rows) const;

 private:
  void validate() const;

  CMat36 generators_;
  Mat6 real_;
  std::optional<ExactCMatrix> exact_;
};

/// Polarization: a positive definite hermitian form H(z, w) = z^* H w whose
/// imaginary part E is integral on the lattice.
class RiemannForm {
 public:
  static RiemannForm from_hermitian(const Lattice& lattice, const CMat3& h);
  static RiemannForm from_hermitian(const Lattice& lattice, const ExactCMatrix& h);
  // H = identity; integral on the Gaussian lattice.
  static RiemannForm standard(const Lattice& lattice);

  const CMat3& hermitian() const { return h_; }
  const std::optional<ExactCMatrix>& exact_hermitian() const { return exact_h_; }
  // E(gamma_i, gamma_j).
  const IntMat6& alternating() const { return e_; }
  // Re H and Im H as bilinear forms on R^6.
  Mat6 real_metric() const;
  Mat6 real_alternating() const;

  std::int64_t pairing(const IntVec6& a, const IntVec6& b) const { return a.dot(e_ * b); }

 private:
  RiemannForm() = default;
  CMat3 h_;
  std::optional<ExactCMatrix> exact_h_;
  IntMat6 e_;
};

// Im H(x, y) for every pair of generators; exact when both inputs are exact.
Eigen::MatrixXd alternating_gram(const Lattice& lattice, const CMat3& h);
std::optional<IntMat6> exact_alternating_gram(const Lattice& lattice, const ExactCMatrix& h);

/// Rank-k sublattice of Z^6 (coordinates relative to a lattice's generators),
/// held in Hermite normal form.
class Submodule {
 public:
  explicit Submodule(const IntMatrix& generators);

  int rank() const { return static_cast<int>(hnf_.rows()); }
  const IntMatrix& hnf() const { return hnf_; }
  IntVec6 row(int i) const { return hnf_.row(i).transpose(); }

  friend bool operator==(const Submodule& a, const Submodule& b) { return a.hnf_ == b.hnf_; }

 private:
  IntMatrix hnf_;
};

RealSubspace real_span(const Lattice& lattice, const Submodule& sub);

int complex_span_dim(const Lattice& lattice, const Submodule& sub);

struct TotallyRealResult {
  bool totally_real = false;
  Complex det;
  // |det| divided by the product of the column norms.
  double normalized_det = 0.0;
  std::optional<ExactComplex> exact_det;
};

// Scale-invariant zero threshold on the normalized determinant.
inline constexpr double kDetZeroTolerance = 1e-9;

TotallyRealResult is_totally_real(const Lattice& lattice, const Submodule& sub);

struct ClosureOptions {
  double height_bound = 1e6;
  double accept_threshold = 1e-10;
  double reject_threshold = 1e-6;
  // Relation search runs at weights 10^min_level ... 10^max_level.
  int min_level = 2;
  int max_level = 14;
};

struct ClosureResult {
  RealSubspace subspace;
  // Integer relations (rows) annihilating the closure in generator coordinates.
  IntMatrix relations;
  // Z-basis (columns) of the saturated sublattice spanning the closure.
  IntMatrix sublattice;
  bool heuristic = false;
  // Largest weight exponent at which the relation search was still clean.
  int level = 0;
};

/// Smallest lattice-rational subspace containing V. Floating lattices use
/// integer-relation detection and flag the result as heuristic.
ClosureResult rational_closure(const RealSubspace& v, const Lattice& lattice,
                               const ClosureOptions& options = {});
/// Exact closure of the real span of the columns of `spanning` (6 x k over
/// Q(sqrt(d)), coordinates in R^6) for an exact lattice.
ClosureResult rational_closure_exact(const ExactMatrix& spanning, const Lattice& lattice);

int closure_dim_complex_line(const CVec3& v, const Lattice& lattice, const ClosureOptions& options = {});
// v is a 3 x 1 exact complex vector.
int closure_dim_complex_line(const ExactCMatrix& v, const Lattice& lattice);

}  // namespace brody
