#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "brody/geometry.hpp"
#include "brody/real_subspace.hpp"

namespace brody {

/// Finite set of balls (in the largest-principal-angle metric) on the
/// Grassmannian of real 4-planes in R^6.
struct CoverNet {
  std::vector<RealSubspace> centers;
  double epsilon = 0.0;
  std::vector<ComplexLine> lines;  // empty, or one per center
  std::uint64_t seed = 0;

  void validate() const;
};

// max_principal_angle(hp, h) <= eps + 1e-12.
bool in_ball(const RealSubspace& hp, const RealSubspace& h, double eps);

// Uniformly distributed 4-plane (span of a Gaussian 6x4 frame).
RealSubspace random_four_plane(std::mt19937_64& rng);

struct CoverOptions {
  std::size_t max_centers = 1000000;
  // Wall-clock limit; CapacityExceeded when reached before the net is complete.
  std::optional<std::chrono::steady_clock::duration> deadline;
};

/// Greedy net: random 4-planes become centers unless already covered; stops
/// after `probe_budget` consecutive covered samples.
CoverNet build_cover(double eps, std::uint64_t seed, std::uint64_t probe_budget, const CoverOptions& options = {});

// Fraction of `probes` fresh random 4-planes covered by some ball.
double verify_cover(const CoverNet& net, std::uint64_t probes, std::uint64_t seed);

struct MarginCounterexample {
  std::size_t ball = 0;
  RealSubspace h_prime;
  Vec6 u;
  double margin = 0.0;
};

struct MarginReport {
  std::vector<double> min_margin;  // per ball
  double overall_min = 0.0;
  double required = 0.0;
  std::uint64_t violations = 0;
  std::vector<MarginCounterexample> counterexamples;  // first few violations
  bool ok() const { return violations == 0; }
};

// Half-width of the balls and cones probed around each center and line.
inline constexpr double kMarginBallRadius = 0.19634954084936207;  // pi/16

/// Probes 4-planes H' within pi/16 of each center and directions u within
/// pi/16 of the center's line, and records angle(u, H'). Requires lines.
MarginReport check_margin(const CoverNet& net, std::uint64_t probes_per_ball, std::uint64_t seed);

// Sets net.lines[i] = choose_line(center i), then runs check_margin.
MarginReport assign_lines_and_margin(CoverNet& net, std::uint64_t probes_per_ball, std::uint64_t seed);

}  // namespace brody
