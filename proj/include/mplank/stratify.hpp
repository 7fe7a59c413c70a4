#pragma once

// Farthest-point (anti-)Delaunay triangulation of a planar generating set and
// the stratification of the multi-plank it generates.
//
// Every top cell sigma is translated so its circumcenter sits at the origin
// (S_sigma). Each face tau of the triangulation owns the stratum
//   P_tau = ∩_{sigma ⊃ tau} (relint T_{tau,sigma} + N_{S_sigma}(T_{tau,sigma})),
// vertex strata are the shifted anti-Voronoi cells v^j + A_{-V}^j, and the
// multi-plank is the union of the strata of positive dimension. A point is
// assigned to a stratum by finding, for every S_sigma, the face whose
// relative interior plus normal cone holds it.

#include "mplank/geom.hpp"
#include "mplank/multiplank.hpp"

#include <array>
#include <map>
#include <utility>
#include <vector>

namespace mplank {

using Triangle = std::array<std::size_t, 3>;
using Edge = std::pair<std::size_t, std::size_t>;  // sorted index pair

struct FarthestDelaunay {
  std::vector<std::size_t> hull;          ///< extreme points of conv V, counterclockwise
  std::vector<Triangle> cells;            ///< counterclockwise index triples into V
  std::map<Edge, std::vector<std::size_t>> adjacency;  ///< edge -> incident cells
};

/// Anti-Delaunay triangulation by lifting to the paraboloid z = |p|^2 and
/// keeping upper-hull facets. Cocircular ties are resolved by accepting
/// valid triangles in lexicographic order of their sorted index triples.
FarthestDelaunay farthest_delaunay_2d(std::span<const Point> V, const Tolerance& tol = {});

/// Every cell's closed circumdisk contains all of V (within eps_geom).
bool full_sphere_property(const FarthestDelaunay& fd, std::span<const Point> V, const Tolerance& tol = {});

struct CenteredSimplex {
  Triangle cell;
  std::array<Point, 3> vertices;  ///< V[cell[a]] + shift
  Point shift;                    ///< minus the circumcenter of the cell
  double circumradius = 0.0;
};

/// Translated copies S_sigma; throws std::logic_error if two of them overlap.
std::vector<CenteredSimplex> centered_simplices(const FarthestDelaunay& fd, std::span<const Point> V,
                                                const Tolerance& tol = {});

/// Outward normal cone given by generating rays (empty for the zero cone).
struct NormalCone {
  std::vector<Point> rays;
};

struct StratumId {
  int dim = 0;
  std::vector<std::size_t> vertices;  ///< sorted indices into V

  bool operator==(const StratumId&) const = default;
  auto operator<=>(const StratumId&) const = default;
};

struct StratumPiece {
  std::size_t simplex;       ///< index into simplices()
  std::vector<Point> face;   ///< vertices of T_{tau,sigma}
  NormalCone cone;           ///< N_{S_sigma}(T_{tau,sigma})
};

struct Stratum {
  StratumId id;
  std::vector<StratumPiece> pieces;
};

class Stratification {
 public:
  /// Builds the stratification of the centered multi-plank generated by V
  /// (2D). Rank-2 sets use the triangulation; rank-1 sets use the product
  /// of the 1D segment stratification with the orthogonal line.
  static Stratification build(const GeneratingSet& V, const Tolerance& tol = {});

  int rank() const { return rank_; }
  std::size_t generator_count() const { return points_.size(); }
  const FarthestDelaunay& triangulation() const { return fd_; }
  const std::vector<CenteredSimplex>& simplices() const { return simplices_; }
  const std::vector<Stratum>& strata() const { return strata_; }

  /// Stratum containing x (coordinates relative to the multi-plank center).
  /// Ties are resolved to the highest-dimensional face.
  StratumId classify(const Point& x) const;

  /// min over vertex strata of the largest normalized violation of their
  /// defining inequalities: <= 0 exactly when x lies in some vertex stratum.
  double vertex_strata_gap(const Point& x) const;

 private:
  int rank_ = 0;
  Tolerance tol_;
  std::vector<Point> points_;
  FarthestDelaunay fd_;
  std::vector<CenteredSimplex> simplices_;
  std::vector<Stratum> strata_;
  // Rank-1 data: unit direction of aff V and the centered segment [lo, hi].
  Point line_dir_;
  double lo_ = 0.0;
  double hi_ = 0.0;
  std::size_t lo_index_ = 0;
  std::size_t hi_index_ = 0;
};

/// Membership read off the stratification: positive-dimensional strata are
/// Inside, vertex strata Outside, and points within eps_geom of a vertex
/// stratum's boundary are Boundary.
Membership contains_via_strata(const Stratification& strat, const MultiPlank& P, const Point& x);

}  // namespace mplank
