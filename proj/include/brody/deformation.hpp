#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "brody/lattice.hpp"

namespace brody {

/// Lattice with period matrix (I | Omega) and the principal polarization
/// H = (Im Omega)^{-1}.
struct PeriodSample {
  CMat3 omega;
  Lattice lattice;
  RiemannForm form;
};

PeriodSample period_lattice(const CMat3& omega);

// Omega = i I + scale (A + i B), A and B seeded symmetric with entries in [-1, 1];
// resampled until Im Omega is positive definite.
PeriodSample sample_period_matrix(std::uint64_t seed, double scale = 0.3);

struct DegenerateSample {
  PeriodSample sample;
  Submodule submodule;
};

/// Split period matrix Omega = diag(tau, Omega') with the submodule spanned by
/// e1, tau e1 and a seeded third lattice vector: never totally real.
DegenerateSample sample_degenerate_submodule(std::uint64_t seed, double scale = 0.3);

/// Primitive vector of the kernel of E restricted to the submodule, with its
/// first nonzero coordinate positive.
IntVec6 kernel_vector(const Submodule& sub, const RiemannForm& form);

struct WConditions {
  bool pairs_with_v = false;        // E(v, w) != 0
  bool leaves_complex_span = false;  // w not in the complex span of the submodule
  bool nonzero_on_line = false;     // E(w, .) does not vanish on L = S ∩ iS
  bool all() const { return pairs_with_v && leaves_complex_span && nonzero_on_line; }
};

WConditions check_w(const Lattice& lattice, const RiemannForm& form, const Submodule& sub, const IntVec6& v,
                    const IntVec6& w);

/// First w (coefficient sup-norm shells 1..height, lexicographic inside a
/// shell) satisfying every condition of check_w. Throws NotFound.
IntVec6 find_w(const Lattice& lattice, const RiemannForm& form, const Submodule& sub, const IntVec6& v,
               int height = 10);

struct DeformationData {
  IntVec6 v = IntVec6::Zero();
  IntVec6 w = IntVec6::Zero();
  // Orthogonal projector onto K = {x : E(x, w) = 0} in R^6.
  Mat6 k_projector = Mat6::Identity();
  double t = 0.0;
  std::optional<QuadNumber> exact_t;
  // Generator i decomposes as c_i v + k_i with k_i in K; c_i = E(g_i, w) / E(v, w).
  std::vector<Rational> coefficients;
};

DeformationData make_deformation(const Lattice& lattice, const RiemannForm& form, const IntVec6& v,
                                 const IntVec6& w, double t, std::optional<QuadNumber> exact_t = std::nullopt);

// Generators g_i + c_i t w; exact when the lattice is exact.
Lattice deform(const Lattice& lattice, const DeformationData& data);

struct DeformationEntry {
  double t = 0.0;
  TotallyRealResult result;
  bool isometry = false;
  double isometry_error = 0.0;
};

struct DeformationReport {
  bool already_totally_real = false;
  IntVec6 v = IntVec6::Zero();
  IntVec6 w = IntVec6::Zero();
  std::vector<DeformationEntry> entries;
  // Not totally real exactly at t = 0, and every deformation an isometry of E.
  bool as_expected() const;
};

DeformationReport check_deformation(const Lattice& lattice, const RiemannForm& form, const Submodule& sub,
                                    const std::vector<double>& ts, int height = 10);

/// Every rank-3 HNF in Z^6 with pivots in [1, height], entries above pivots in
/// [0, pivot) and remaining entries in [-height, height].
std::vector<IntMatrix> enumerate_submodules(int height, std::size_t max_count = 5000000);

struct ScanReport {
  int height = 0;
  std::size_t count = 0;
  std::vector<IntMatrix> failures;
  double min_normalized_det = 0.0;
  IntMatrix argmin;
};

ScanReport genericity_scan(const Lattice& lattice, int height, std::size_t max_count = 5000000);

}  // namespace brody
