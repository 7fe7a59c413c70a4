#pragma once

// Intrinsic inradii of convex polytopes and the inscribed radius of
// multi-planks.
//
// Both intrinsic radii are infima over k-dimensional linear subspaces L:
//   upper  r^(k)(K) = inf_L r(K|L; L)                       (projections)
//   lower  r_(k)(K) = inf_L sup_{x in L^perp} r(K ∩ (L+x))   (sections)
// The infimum is searched on a direction grid (720 angles in the plane, a
// 1000-node Fibonacci hemisphere in space) and refined locally
// (golden-section in the plane, Nelder-Mead on the sphere).

#include "mplank/geom.hpp"
#include "mplank/multiplank.hpp"

#include <functional>

namespace mplank {

struct Subspace {
  int k = 0;
  Eigen::MatrixXd basis;  ///< n x k, orthonormal columns
  bool refined = false;   ///< grid value improved by local refinement
};

struct IntrinsicRadius {
  double value = 0.0;
  Subspace argmin;
};

struct IntrinsicRadii {
  IntrinsicRadius upper;
  IntrinsicRadius lower;
};

/// r(K|L; L): inradius of the orthogonal projection onto span(basis).
double projection_inradius(const Polytope& K, const Eigen::MatrixXd& basis, const Tolerance& tol = {});

/// sup over parallel translates L + x of the inradius of K ∩ (L + x), solved
/// as one LP over (center, radius) with the ball confined to L.
double section_inradius(const Polytope& K, const Eigen::MatrixXd& basis, const Tolerance& tol = {});

IntrinsicRadius upper_intrinsic(const Polytope& K, int k, const Tolerance& tol = {});
IntrinsicRadius lower_intrinsic(const Polytope& K, int k, const Tolerance& tol = {});
IntrinsicRadii intrinsic_radii(const Polytope& K, int k, const Tolerance& tol = {});

/// Generic search helper: minimizes `objective` over k-subspaces of R^n
/// (n in {2,3}) with the grid-plus-refinement scheme above.
IntrinsicRadius minimize_over_subspaces(int n, int k,
                                        const std::function<double(const Eigen::MatrixXd&)>& objective);

/// Basis of the line spanned by angle theta in the plane.
Eigen::MatrixXd line_basis_2d(double theta);

/// Distance from x to the complement of P (0 when x is not in P).
double clearance(const MultiPlank& P, const Point& x);

/// True when every one of `samples` points on the sphere of radius `radius`
/// around `center` is Inside P.
bool sphere_inside(const MultiPlank& P, const Point& center, double radius, std::size_t samples);

/// Largest ball inside P found by multi-start Nelder-Mead on the clearance,
/// seeded on the skeleton of the centered simplices (2D, full rank) and on
/// a seeded cloud around the origin.
Ball multiplank_inscribed_radius(const MultiPlank& P, const Tolerance& tol = {});

}  // namespace mplank
