#include "brody/cover.hpp"

#include <array>
#include <cmath>

#include <Eigen/QR>

#include "brody/error.hpp"

namespace brody {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr std::size_t kMaxCounterexamples = 20;

// Orthonormal basis of the 2-dimensional orthogonal complement.
using Complement = Eigen::Matrix<double, 6, 2>;

struct Sample {
  RealSubspace plane;
  Complement complement;
};

Sample sample_plane(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::Matrix<double, 6, 4> g;
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 6; ++i) g(i, j) = normal(rng);
  Eigen::HouseholderQR<Eigen::Matrix<double, 6, 4>> qr(g);
  Mat6 q = qr.householderQ();
  return {RealSubspace::from_orthonormal(q.leftCols(4)), q.rightCols(2)};
}

// Largest principal angle between 4-planes equals that between their
// complements; for 2-planes with M = c^T q, both singular values of M are
// at least cos(eps) iff tr >= 2s and det^2 - s tr + s^2 >= 0, s = cos^2 eps.
bool complement_covered(const Complement& c, const Complement& q, double s) {
  Eigen::Matrix2d m = c.transpose() * q;
  double tr = m.squaredNorm();
  if (tr < 2.0 * s) return false;
  double det = m.determinant();
  return det * det - s * tr + s * s >= 0.0;
}

Complement complement_of(const RealSubspace& plane) {
  Frame c = plane.complement_basis();
  if (c.cols() != 2) throw InvalidInput("cover centers must be 4-dimensional");
  return c;
}

double cover_threshold(double eps) {
  double c = std::cos(std::min(eps + 1e-12, kPi / 2));
  return std::max(0.0, c * c);
}

}  // namespace

void CoverNet::validate() const {
  if (!(epsilon > 0.0 && epsilon <= kPi / 2 + 1e-15)) throw InvalidInput("cover radius must lie in (0, pi/2]");
  for (const auto& c : centers)
    if (c.dim() != 4) throw InvalidInput("cover center is not a 4-plane");
  if (!lines.empty() && lines.size() != centers.size())
    throw InvalidInput("cover lines must match the centers one to one");
}

bool in_ball(const RealSubspace& hp, const RealSubspace& h, double eps) {
  if (hp.dim() != 4 || h.dim() != 4) throw InvalidInput("in_ball needs two 4-planes");
  return max_principal_angle(hp, h) <= eps + 1e-12;
}

RealSubspace random_four_plane(std::mt19937_64& rng) { return sample_plane(rng).plane; }

CoverNet build_cover(double eps, std::uint64_t seed, std::uint64_t probe_budget, const CoverOptions& options) {
  if (!(eps > 0.0 && eps <= kPi / 2 + 1e-15)) throw InvalidInput("cover radius must lie in (0, pi/2]");
  if (probe_budget < 10000) throw InvalidInput("cover probe budget must be at least 10^4");
  const auto start = std::chrono::steady_clock::now();
  const double s = cover_threshold(eps);

  CoverNet net;
  net.epsilon = eps;
  net.seed = seed;
  std::vector<Complement> complements;
  std::mt19937_64 rng(seed);
  std::uint64_t streak = 0;
  std::uint64_t samples = 0;
  while (streak < probe_budget) {
    Sample x = sample_plane(rng);
    ++samples;
    bool covered = false;
    for (const auto& c : complements)
      if (complement_covered(c, x.complement, s)) {
        covered = true;
        break;
      }
    if (covered) {
      ++streak;
    } else {
      streak = 0;
      if (net.centers.size() >= options.max_centers)
        throw CapacityExceeded("cover: net exceeded " + std::to_string(options.max_centers) + " centers");
      net.centers.push_back(x.plane);
      complements.push_back(x.complement);
    }
    if (options.deadline && (samples & 255) == 0 &&
        std::chrono::steady_clock::now() - start > *options.deadline)
      throw CapacityExceeded("cover: time budget exhausted with " + std::to_string(net.centers.size()) +
                             " centers after " + std::to_string(samples) + " samples");
  }
  return net;
}

double verify_cover(const CoverNet& net, std::uint64_t probes, std::uint64_t seed) {
  if (probes < 1) throw InvalidInput("verify_cover needs at least one probe");
  net.validate();
  std::vector<Complement> complements;
  for (const auto& c : net.centers) complements.push_back(complement_of(c));
  const double s = cover_threshold(net.epsilon);
  std::mt19937_64 rng(seed);
  std::uint64_t hits = 0;
  for (std::uint64_t p = 0; p < probes; ++p) {
    Sample x = sample_plane(rng);
    for (const auto& c : complements)
      if (complement_covered(c, x.complement, s)) {
        ++hits;
        break;
      }
  }
  return static_cast<double>(hits) / static_cast<double>(probes);
}

MarginReport check_margin(const CoverNet& net, std::uint64_t probes_per_ball, std::uint64_t seed) {
  net.validate();
  if (net.lines.size() != net.centers.size()) throw InvalidInput("check_margin needs one line per center");
  MarginReport report;
  report.required = kPi / 8 - 1e-6;
  report.overall_min = kPi / 2;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (std::size_t i = 0; i < net.centers.size(); ++i) {
    const Frame& p = net.centers[i].basis();
    Complement n = complement_of(net.centers[i]);
    RealSubspace plane = net.lines[i].as_real_plane();
    const Frame& lp = plane.basis();
    double worst = kPi / 2;
    for (std::uint64_t k = 0; k < probes_per_ball; ++k) {
      // H' = graph of X : H -> H^perp with largest principal angle r * pi/16,
      // r biased towards the boundary of the ball.
      Eigen::Matrix<double, 2, 4> x;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 4; ++b) x(a, b) = normal(rng);
      x /= Eigen::JacobiSVD<Eigen::Matrix<double, 2, 4>>(x).singularValues()(0);
      double r = std::pow(unit(rng), 0.125);
      Frame graph = p + n * (std::tan(r * kMarginBallRadius) * x);
      RealSubspace hp = RealSubspace::span(graph);

      // u within pi/16 of the line's real plane.
      double psi = 2 * kPi * unit(rng);
      Vec6 ell = std::cos(psi) * lp.col(0) + std::sin(psi) * lp.col(1);
      Vec6 g;
      for (int a = 0; a < 6; ++a) g(a) = normal(rng);
      g -= ell * ell.dot(g);
      g.normalize();
      double phi = kMarginBallRadius * std::sqrt(unit(rng));
      Vec6 u = std::cos(phi) * ell + std::sin(phi) * g;

      double margin = vector_subspace_angle(u, hp);
      worst = std::min(worst, margin);
      if (margin < report.required) {
        ++report.violations;
        if (report.counterexamples.size() < kMaxCounterexamples) report.counterexamples.push_back({i, hp, u, margin});
      }
    }
    report.min_margin.push_back(worst);
    report.overall_min = std::min(report.overall_min, worst);
  }
  return report;
}

MarginReport assign_lines_and_margin(CoverNet& net, std::uint64_t probes_per_ball, std::uint64_t seed) {
  net.lines.clear();
  for (const auto& c : net.centers) net.lines.push_back(choose_line(c));
  return check_margin(net, probes_per_ball, seed);
}

}  // namespace brody
