#pragma once

// Euclidean primitives shared by every other module: points, balls,
// convex polytopes, minimum enclosing balls, Chebyshev centers, hulls and
// distances to polyhedra and fans.

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace mplank {

using Point = Eigen::VectorXd;

/// Slack used by predicates (eps_geom) and by numerical optimizers (eps_opt).
struct Tolerance {
  double eps_geom = 1e-9;
  double eps_opt = 1e-6;

  /// Throws std::invalid_argument unless 0 < eps_geom < eps_opt < 1.
  void validate() const;
};

struct Ball {
  Point center;
  double radius = 0.0;

  bool contains(const Point& p, double eps) const;
};

/// Closed halfspace {x : <normal, x> <= offset}. Normals are stored unit length.
struct Halfspace {
  Point normal;
  double offset = 0.0;

  double slack(const Point& x) const { return offset - normal.dot(x); }
};

/// Bounded convex polytope in dimension 2 or 3 with both representations
/// cached. 2D vertices are kept counterclockwise.
class Polytope {
 public:
  /// 2D polygon from arbitrary points (the convex hull is taken).
  static Polytope polygon(std::span<const Point> points, const Tolerance& tol = {});
  /// Regular polygon with `sides` vertices on the circle of `radius` around `center`.
  static Polytope regular_polygon(int sides, double radius, const Point& center, double phase = 0.0);
  /// 2D or 3D polytope from a vertex cloud.
  static Polytope from_vertices(std::span<const Point> points, const Tolerance& tol = {});
  /// 2D or 3D polytope from halfspaces; throws if the set is unbounded or empty.
  static Polytope from_halfspaces(std::span<const Halfspace> halfspaces, const Tolerance& tol = {});
  static Polytope box(const Point& lo, const Point& hi);

  int dim() const { return dim_; }
  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  /// True when the vertices span the ambient space.
  bool full_dimensional() const { return !halfspaces_.empty(); }

  bool contains(const Point& x, double eps) const;
  /// Intersection with one more halfspace; throws if the result has no vertices.
  Polytope clip(const Halfspace& h, const Tolerance& tol = {}) const;
  Point lower_corner() const;
  Point upper_corner() const;
  Point centroid() const;

 private:
  int dim_ = 0;
  std::vector<Point> vertices_;
  std::vector<Halfspace> halfspaces_;
};

/// m-fan: m rays from `apex` at angles rotation + 2*pi*j/m.
struct Fan {
  Point apex = Point::Zero(2);
  int m = 2;
  double rotation = 0.0;

  Point direction(int j) const;
};

/// Smallest closed ball containing all points (Welzl, move-to-front form).
/// The processing order is a shuffle seeded from the input coordinates.
Ball min_enclosing_ball(std::span<const Point> points, const Tolerance& tol = {});

/// Largest ball contained in a full-dimensional polytope, via linear programming.
Ball chebyshev_ball(const Polytope& body, const Tolerance& tol = {});
/// Same LP on a raw halfspace list (normals need not be unit).
Ball chebyshev_ball(std::span<const Halfspace> halfspaces, int dim, const Tolerance& tol = {});

/// Dimension of the affine hull; SVD with threshold relative to the diameter.
int affine_rank(std::span<const Point> points, const Tolerance& tol = {});

/// Point of the affine hull equidistant from all simplex vertices.
Point circumcenter(std::span<const Point> simplex, const Tolerance& tol = {});

double dist_to_ray(const Point& x, const Point& origin, const Point& direction);
double dist_to_fan(const Point& x, const Fan& fan);
double dist_to_segment(const Point& x, const Point& a, const Point& b);

/// Counterclockwise extreme points starting from the lexicographically
/// smallest; collinear boundary points are dropped.
std::vector<Point> convex_hull_2d(std::span<const Point> points, const Tolerance& tol = {});
/// Same hull reported as indices into `points`.
std::vector<std::size_t> convex_hull_2d_indices(std::span<const Point> points, const Tolerance& tol = {});

double cross2(const Point& a, const Point& b);
double polygon_area(std::span<const Point> ccw);

/// Euclidean distance from x to the closed polyhedron {y : <n_i, y> <= o_i};
/// nullopt when the polyhedron is empty. Exact active-set enumeration,
/// intended for dimension <= 3 and a few dozen halfspaces.
std::optional<double> distance_to_polyhedron(const Point& x, std::span<const Halfspace> halfspaces,
                                             const Tolerance& tol = {});

/// Orthonormal basis (columns) of the orthogonal complement of the columns of `basis`.
Eigen::MatrixXd orthogonal_complement(const Eigen::MatrixXd& basis);

Point make_point(std::initializer_list<double> coords);

}  // namespace mplank
