#pragma once

// Multi-planks in the plane under a polygonal, possibly asymmetric, gauge
// ||x|| = inf{r : x in rB}.

#include "mplank/experiments.hpp"
#include "mplank/geom.hpp"
#include "mplank/multiplank.hpp"

#include <optional>
#include <vector>

namespace mplank {

class Gauge {
 public:
  /// Convex hull of `polygon` must contain the origin strictly inside.
  explicit Gauge(std::span<const Point> polygon, const Tolerance& tol = {});

  /// Regular polygon inscribed in the unit circle.
  static Gauge regular(int sides, double phase = 0.0);

  const std::vector<Point>& vertices() const { return vertices_; }
  /// Edge functionals a_e with B = {x : <a_e, x> <= 1 for all e}.
  const std::vector<Point>& functionals() const { return functionals_; }

  double norm(const Point& x) const;
  /// h_B(u) = max over B of <u, x>.
  double support(const Point& u) const;

 private:
  std::vector<Point> vertices_;
  std::vector<Point> functionals_;
};

double gauge_norm(const Gauge& B, const Point& x);

struct CenteringCertificate {
  bool centered = false;
  double r = 0.0;      ///< max_j ||v^j||
  double rho = 0.0;    ///< smallest rho with V inside some t + rho B
  Point translation;   ///< the optimal t
};

/// Exact LP for min rho s.t. V inside t + rho B; centered iff rho >= r - eps_opt.
CenteringCertificate normed_centering_check(std::span<const Point> V, const Gauge& B, const Tolerance& tol = {});

/// V translated so the smallest covering homothet of B is centered at the origin.
std::vector<Point> normed_center(std::span<const Point> V, const Gauge& B, const Tolerance& tol = {});

class NormedMultiPlank {
 public:
  /// Centered only; throws std::invalid_argument if V fails the centering check.
  NormedMultiPlank(std::vector<Point> V, Gauge B, const Tolerance& tol = {});

  const std::vector<Point>& generators() const { return points_; }
  const Gauge& gauge() const { return gauge_; }
  double radius() const { return r_; }
  int rank() const { return rank_; }
  const Tolerance& tolerance() const { return tol_; }

 private:
  std::vector<Point> points_;
  Gauge gauge_;
  double r_ = 0.0;
  int rank_ = 0;
  Tolerance tol_;
};

/// min_j max_{j' != j} (||x - v^j + v^j'|| - ||x||); positive inside.
double normed_margin(const NormedMultiPlank& P, const Point& x);
Membership normed_contains(const NormedMultiPlank& P, const Point& x);

/// k = 2: largest r with a translate of rB inside K. k = 1: min over lines of
/// the longest chord of K divided by the chord of B through the origin.
double normed_lower_intrinsic(const Polytope& K, int k, const Gauge& B, const Tolerance& tol = {});

/// k = 2: as the lower radius. k = 1: min over directions of the width ratio
/// w_K(nu) / (h_B(nu) + h_B(-nu)).
double normed_upper_intrinsic(const Polytope& K, int k, const Gauge& B, const Tolerance& tol = {});

struct NormedEscapeReport {
  std::size_t bang_size = 0;
  double max_norm = 0.0;
  std::vector<Point> maximizers;
  std::vector<std::vector<Membership>> verdicts;
  std::vector<std::vector<double>> margins;
  bool holds = true;
};

/// Every gauge-farthest point of X - s avoids every open plank. All planks must share one gauge.
NormedEscapeReport normed_farthest_escape_check(std::span<const NormedMultiPlank> planks, const Point& s,
                                                const Tolerance& tol = {});

struct NormedPantsReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  CoveringReport covering;
};

/// Sum of r^B(P_i) against r^B_(k)(K) once a sampled covering is certified;
/// throws CoverageNotEstablished otherwise.
NormedPantsReport verify_normed_pants(const Polytope& K, std::span<const NormedMultiPlank> planks, int k,
                                      std::size_t budget = 10'000, std::uint64_t seed = 42,
                                      const Tolerance& tol = {});

}  // namespace mplank
