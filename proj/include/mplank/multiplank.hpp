#pragma once

// Multi-planks: the complement of the shifted farthest-point Voronoi cells
// v^j + A_{-V}^j of a centered generating set V. Regions are never stored
// explicitly; everything is answered by membership predicates.

#include "mplank/geom.hpp"

#include <string_view>
#include <vector>

namespace mplank {

enum class Membership { Inside, Boundary, Outside };

std::string_view to_string(Membership m);

/// Finite point set together with its minimum enclosing ball. Duplicate
/// points (within eps_geom) are merged on construction.
class GeneratingSet {
 public:
  explicit GeneratingSet(std::vector<Point> points, const Tolerance& tol = {});

  const std::vector<Point>& points() const { return points_; }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  std::size_t size() const { return points_.size(); }
  int dim() const { return static_cast<int>(points_.front().size()); }
  const Ball& meb() const { return meb_; }
  double radius() const { return meb_.radius; }
  /// MEB center at the origin within eps_geom (scaled by the radius).
  bool centered(double eps) const;

 private:
  std::vector<Point> points_;
  Ball meb_;
};

struct CenteredSet {
  GeneratingSet set;
  Point shift;  ///< translation that was applied to the input
};

/// Translates the points so that their minimum enclosing ball is origin-centered.
CenteredSet center(std::span<const Point> points, const Tolerance& tol = {});

class MultiPlank {
 public:
  /// Throws std::invalid_argument unless `gen` is centered and dimensions agree.
  MultiPlank(GeneratingSet gen, Point translation, bool closed = false, const Tolerance& tol = {});

  /// Centered multi-plank (zero translation) generated by already-centered points.
  static MultiPlank centered(std::vector<Point> points, bool closed = false, const Tolerance& tol = {});

  const GeneratingSet& generators() const { return gen_; }
  const Point& translation() const { return translation_; }
  bool closed() const { return closed_; }
  int dim() const { return gen_.dim(); }
  int rank() const { return rank_; }
  const Tolerance& tolerance() const { return tol_; }

  /// Whether a membership verdict counts as containment (Boundary only for closed planks).
  bool admits(Membership m) const { return m == Membership::Inside || (closed_ && m == Membership::Boundary); }

  /// The closed convex complement cells v^j + A_{-V}^j (translation included)
  /// as halfspace systems; empty cells (non-extreme v^j) are still listed.
  std::vector<std::vector<Halfspace>> complement_cells() const;

 private:
  GeneratingSet gen_;
  Point translation_;
  bool closed_;
  Tolerance tol_;
  int rank_;
};

/// Signed membership margin: positive inside, negative outside, in length
/// units. Boundary is |margin| <= eps_geom * max(1, r(V)).
double membership_margin(const MultiPlank& P, const Point& x);

/// Membership via the defining "for all j exists j'" predicate.
Membership contains(const MultiPlank& P, const Point& x);

/// Fast containment test with early exit (Inside, or Boundary for closed planks).
bool covers_point(const MultiPlank& P, const Point& x);

/// Indices j maximizing |x - v^j| (ties within eps_geom).
std::vector<std::size_t> anti_voronoi_indices(std::span<const Point> V, const Point& x, const Tolerance& tol = {});

/// Signed depth of x in the closed farthest-point cell A_V^j:
/// |x - v^j| - max_{j' != j} |x - v^j'|  (>= 0 inside the cell).
double anti_voronoi_depth(std::span<const Point> V, const Point& x, std::size_t j);

/// Membership via the complement of the shifted cells v^j + A_{-V}^j.
Membership contains_via_cells(const MultiPlank& P, const Point& x);

double inradius(const MultiPlank& P);

struct SimpleMultiPlank {
  MultiPlank plank;
  Eigen::MatrixXd subspace;  ///< orthonormal basis (n x k) of the projection subspace L
  double projected_inradius;  ///< r(C|L; L) for that L
};

/// Closed simple multi-plank of rank <= k containing C whose inradius is the
/// upper intrinsic inradius r^(k)(C) (up to eps_opt).
SimpleMultiPlank simple_multiplank(const Polytope& C, int k, const Tolerance& tol = {});

/// Open centered multi-plank generated by all sign combinations sum(+-u_i);
/// contains the union of the planks |<x,u_i>| < |u_i|^2.
MultiPlank plank_union_multiplank(std::span<const Point> u, const Tolerance& tol = {});

}  // namespace mplank
