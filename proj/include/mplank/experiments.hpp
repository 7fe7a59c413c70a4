#pragma once

// Numerical checks built on the multi-plank machinery: Bang
// sets and farthest-point escape, covering and subadditivity checks, the
// pizza-cutter optimizer and bound, fan families and the two-multi-plank
// disk cover.

#include "mplank/geom.hpp"
#include "mplank/inradii.hpp"
#include "mplank/multiplank.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

namespace mplank {

inline constexpr std::size_t kBangSetCap = 1'000'000;

struct BangSet {
  std::vector<std::vector<Point>> summands;
  std::vector<Point> points;  ///< all sums, first summand varying slowest
};

/// Minkowski sum V_1 + ... + V_N; throws std::length_error above `cap`.
BangSet bang_set(std::span<const std::vector<Point>> sets, std::size_t cap = kBangSetCap);

struct EscapeReport {
  std::size_t bang_size = 0;
  double max_norm = 0.0;
  std::vector<Point> maximizers;                  ///< farthest points of X - s
  std::vector<std::vector<Membership>> verdicts;  ///< [maximizer][plank]
  std::vector<std::vector<double>> margins;       ///< signed membership margins
  Point witness;                                  ///< first maximizer
  bool holds = true;                              ///< no maximizer strictly inside any plank
};

/// Builds X from the generating sets of centered multi-planks and checks that
/// every maximizer of |.| over X - s (ties within eps_geom) avoids the open planks.
EscapeReport farthest_escape_check(std::span<const MultiPlank> planks, const Point& s, const Tolerance& tol = {});

using Cover = std::variant<MultiPlank, Polytope>;

struct CoveringInstance {
  Polytope K;
  std::vector<Cover> covers;
  int k = 1;
  std::size_t budget = 10'000;
  std::uint64_t seed = 42;
};

struct CoveringReport {
  double coverage_fraction = 0.0;
  std::size_t samples = 0;
  std::optional<Point> uncovered_witness;
};

bool cover_contains(const Cover& c, const Point& x, const Tolerance& tol = {});

/// Classifies `budget` low-discrepancy samples of K against the union of covers.
CoveringReport verify_covering(const CoveringInstance& inst, const Tolerance& tol = {});

struct CoverageNotEstablished : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PantsReport {
  double lhs = 0.0;  ///< sum of r(V_i) for multi-planks, r^(k)(C_i) for convex covers
  double rhs = 0.0;  ///< r_(k)(K)
  bool holds = false;
  CoveringReport covering;
};

/// Checks sum r(V_i) >= r_(k)(K) - eps_opt once the covering is certified at
/// the sampling budget; throws CoverageNotEstablished otherwise.
PantsReport verify_pants_inequality(const CoveringInstance& inst, const Tolerance& tol = {});

// --- pizza cutters ---------------------------------------------------------

/// min(1 - |x|, min_i dist(x, fan_i)): radius of the largest disk centered at
/// x inside the unit disk that avoids every cut. 1-Lipschitz.
double pizza_clearance(const Point& x, std::span<const Fan> fans);

struct PizzaResult {
  double radius = 0.0;
  Point center;
  double gap = 0.0;  ///< certified: true maximum <= radius + gap
  std::size_t evaluations = 0;
};

/// Best-first Lipschitz branch and bound over the unit disk followed by a
/// Nelder-Mead polish of the incumbent. Stops at `target_gap` or `budget`
/// clearance evaluations.
PizzaResult pizza_best_piece(std::span<const Fan> fans, std::size_t budget = 100'000, double target_gap = 1e-7);

/// sin(pi/m) / (N + sin(pi/m)).
double pizza_bound(int m, int N);

/// Multi-plank generated by m points of length rbar / sin(pi/m) along the
/// sector bisectors of the fan, translated to the apex.
MultiPlank fan_neighborhood_multiplank(const Fan& fan, double rbar, const Tolerance& tol = {});

enum class FanFamily { MFan, RegularSimplex, CoxeterA, Orbit };

struct FanFamilySpec {
  FanFamily family = FanFamily::MFan;
  int param = 2;              ///< m for MFan, n otherwise
  std::vector<Point> orbit;   ///< points on the unit sphere (Orbit only)
};

/// Spherical inradius alpha_F of the regions cut out by the fan.
double fan_half_angle(const FanFamilySpec& spec);

/// Half the minimum pairwise geodesic distance between orbit points.
double orbit_half_angle(std::span<const Point> orbit);

/// m equiangular unit vectors starting at `phase`.
std::vector<Point> circle_orbit(int m, double phase = 0.0);

// --- sharpness -------------------------------------------------------------

/// The two multi-planks generated by N equispaced points on the circle of
/// radius r, the second rotated by pi/N. Both closed.
std::pair<MultiPlank, MultiPlank> sharpness_pair(int N, double r, const Tolerance& tol = {});

struct SharpnessReport {
  bool covers_unit_disk = false;
  std::optional<Point> witness;
  std::size_t samples = 0;
  std::optional<double> min_covering_r;
};

/// Sampling check that the pair covers the unit disk; with `bisect`, also the
/// smallest covering radius at that sampling resolution.
SharpnessReport sharpness_two_multiplanks(int N, double r, std::size_t samples = 100'000, bool bisect = false,
                                          const Tolerance& tol = {});

/// Bisection over r in [lo, hi] for the smallest radius whose pair covers
/// all `samples` points of the unit disk.
double min_covering_radius(int N, std::size_t samples = 100'000, double lo = 0.3, double hi = 1.0,
                           double resolution = 1e-4, const Tolerance& tol = {});

/// Samples of the closed unit disk: count / 10 on the boundary circle at
/// golden-ratio angles, the rest Halton with rejection.
std::vector<Point> unit_disk_samples(std::size_t count, std::uint64_t seed = 0);

}  // namespace mplank
