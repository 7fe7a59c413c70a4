#include "mplank/geom.hpp"

#include "mplank/lp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>

namespace mplank {

void Tolerance::validate() const {
  if (!(eps_geom > 0.0 && eps_geom < eps_opt && eps_opt < 1.0))
    throw std::invalid_argument("tolerance must satisfy 0 < eps_geom < eps_opt < 1");
}

bool Ball::contains(const Point& p, double eps) const {
  return (p - center).norm() <= radius + eps * std::max(1.0, radius);
}

Point make_point(std::initializer_list<double> coords) {
  Point p(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double c : coords) p(i++) = c;
  return p;
}

double cross2(const Point& a, const Point& b) { return a(0) * b(1) - a(1) * b(0); }

double polygon_area(std::span<const Point> ccw) {
  double a = 0.0;
  for (std::size_t i = 0; i < ccw.size(); ++i) a += cross2(ccw[i], ccw[(i + 1) % ccw.size()]);
  return 0.5 * a;
}

// ---------------------------------------------------------------------------
// Hulls

std::vector<std::size_t> convex_hull_2d_indices(std::span<const Point> points, const Tolerance& tol) {
  if (points.empty()) return {};
  for (const auto& p : points)
    if (p.size() != 2) throw std::invalid_argument("convex_hull_2d: points must be 2D");
  std::vector<std::size_t> idx(points.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (points[a](0) != points[b](0)) return points[a](0) < points[b](0);
    if (points[a](1) != points[b](1)) return points[a](1) < points[b](1);
    return a < b;
  });
  double scale = 0.0;
  for (const auto& p : points) scale = std::max(scale, p.cwiseAbs().maxCoeff());
  const double eps = tol.eps_geom * std::max(1.0, scale * scale);
  // Drop exact duplicates (keep the lowest index).
  std::vector<std::size_t> uniq;
  for (std::size_t i : idx)
    if (uniq.empty() || (points[uniq.back()] - points[i]).norm() > tol.eps_geom * std::max(1.0, scale))
      uniq.push_back(i);
  if (uniq.size() <= 2) return uniq;

  auto turn = [&](std::size_t o, std::size_t a, std::size_t b) {
    return cross2(points[a] - points[o], points[b] - points[o]);
  };
  std::vector<std::size_t> hull(2 * uniq.size());
  std::size_t k = 0;
  for (std::size_t i : uniq) {
    while (k >= 2 && turn(hull[k - 2], hull[k - 1], i) <= eps) --k;
    hull[k++] = i;
  }
  for (std::size_t t = uniq.size() - 1, lower = k + 1; t-- > 0;) {
    const std::size_t i = uniq[t];
    while (k >= lower && turn(hull[k - 2], hull[k - 1], i) <= eps) --k;
    hull[k++] = i;
  }
  hull.resize(k - 1);
  return hull;
}

std::vector<Point> convex_hull_2d(std::span<const Point> points, const Tolerance& tol) {
  std::vector<Point> out;
  for (std::size_t i : convex_hull_2d_indices(points, tol)) out.push_back(points[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Polytope

namespace {

Halfspace normalized(const Halfspace& h) {
  const double len = h.normal.norm();
  if (!(len > 0.0)) throw std::invalid_argument("halfspace with zero normal");
  return {h.normal / len, h.offset / len};
}

void push_unique(std::vector<Point>& pts, const Point& p, double eps) {
  for (const auto& q : pts)
    if ((q - p).norm() <= eps) return;
  pts.push_back(p);
}

void push_unique(std::vector<Halfspace>& hs, const Halfspace& h, double eps) {
  for (const auto& g : hs)
    if ((g.normal - h.normal).norm() <= eps && std::abs(g.offset - h.offset) <= eps) return;
  hs.push_back(h);
}

std::vector<Point> enumerate_vertices(std::span<const Halfspace> hs, int dim, double eps) {
  std::vector<Point> out;
  const std::size_t m = hs.size();
  auto feasible = [&](const Point& x) {
    for (const auto& h : hs)
      if (h.slack(x) < -eps * std::max(1.0, std::abs(h.offset))) return false;
    return true;
  };
  if (dim == 2) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        Eigen::Matrix2d A;
        A << hs[i].normal.transpose(), hs[j].normal.transpose();
        if (std::abs(A.determinant()) < 1e-12) continue;
        Point x = A.inverse() * Eigen::Vector2d(hs[i].offset, hs[j].offset);
        if (feasible(x)) push_unique(out, x, 1e-9);
      }
  } else if (dim == 3) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        for (std::size_t k = j + 1; k < m; ++k) {
          Eigen::Matrix3d A;
          A << hs[i].normal.transpose(), hs[j].normal.transpose(), hs[k].normal.transpose();
          if (std::abs(A.determinant()) < 1e-12) continue;
          Point x = A.partialPivLu().solve(Eigen::Vector3d(hs[i].offset, hs[j].offset, hs[k].offset));
          if (feasible(x)) push_unique(out, x, 1e-9);
        }
  } else {
    throw std::invalid_argument("polytope dimension must be 2 or 3");
  }
  return out;
}

void check_bounded(std::span<const Halfspace> hs, int dim) {
  Eigen::MatrixXd A(static_cast<Eigen::Index>(hs.size()), dim);
  Eigen::VectorXd b(static_cast<Eigen::Index>(hs.size()));
  for (std::size_t i = 0; i < hs.size(); ++i) {
    A.row(static_cast<Eigen::Index>(i)) = hs[i].normal.transpose();
    b(static_cast<Eigen::Index>(i)) = hs[i].offset;
  }
  for (int d = 0; d < dim; ++d)
    for (double sign : {1.0, -1.0}) {
      Eigen::VectorXd c = Eigen::VectorXd::Zero(dim);
      c(d) = sign;
      const LpResult r = solve_lp(A, b, c);
      if (r.status == LpStatus::Infeasible) throw std::invalid_argument("polytope: empty halfspace system");
      if (r.status == LpStatus::Unbounded) throw std::invalid_argument("polytope: unbounded body");
    }
}

}  // namespace

Polytope Polytope::polygon(std::span<const Point> points, const Tolerance& tol) {
  if (points.empty()) throw std::invalid_argument("polygon: no points");
  Polytope P;
  P.dim_ = 2;
  P.vertices_ = convex_hull_2d(points, tol);
  const std::size_t n = P.vertices_.size();
  if (n >= 3) {
    for (std::size_t i = 0; i < n; ++i) {
      const Point& a = P.vertices_[i];
      const Point& b = P.vertices_[(i + 1) % n];
      Point normal = make_point({b(1) - a(1), a(0) - b(0)});
      normal.normalize();
      P.halfspaces_.push_back({normal, normal.dot(a)});
    }
  }
  return P;
}

Polytope Polytope::regular_polygon(int sides, double radius, const Point& center, double phase) {
  if (sides < 3) throw std::invalid_argument("regular_polygon: need at least 3 sides");
  std::vector<Point> pts;
  for (int i = 0; i < sides; ++i) {
    const double a = phase + 2.0 * M_PI * i / sides;
    pts.push_back(center + radius * make_point({std::cos(a), std::sin(a)}));
  }
  return polygon(pts);
}

Polytope Polytope::from_vertices(std::span<const Point> points, const Tolerance& tol) {
  if (points.empty()) throw std::invalid_argument("polytope: no points");
  const int dim = static_cast<int>(points.front().size());
  for (const auto& p : points)
    if (p.size() != dim) throw std::invalid_argument("polytope: mixed dimensions");
  if (dim == 2) return polygon(points, tol);
  if (dim != 3) throw std::invalid_argument("polytope dimension must be 2 or 3");

  Polytope P;
  P.dim_ = 3;
  double scale = 1.0;
  for (const auto& p : points) scale = std::max(scale, p.norm());
  if (affine_rank(points, tol) < 3) {
    for (const auto& p : points) push_unique(P.vertices_, p, tol.eps_geom * scale);
    return P;
  }
  const std::size_t m = points.size();
  const double eps = 1e-9 * scale;
  std::vector<Halfspace> hs;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k) {
        Eigen::Vector3d n = (points[j] - points[i]).head<3>().cross((points[k] - points[i]).head<3>());
        if (n.norm() < 1e-12 * scale * scale) continue;
        n.normalize();
        const double off = n.dot(points[i].head<3>());
        bool below = true, above = true;
        for (const auto& p : points) {
          const double s = n.dot(p.head<3>()) - off;
          if (s > eps) below = false;
          if (s < -eps) above = false;
        }
        if (below) push_unique(hs, Halfspace{Point(n), off}, 1e-9);
        if (above) push_unique(hs, Halfspace{Point(-n), -off}, 1e-9);
      }
  P.halfspaces_ = hs;
  P.vertices_ = enumerate_vertices(hs, 3, 1e-9);
  return P;
}

Polytope Polytope::from_halfspaces(std::span<const Halfspace> halfspaces, const Tolerance& tol) {
  if (halfspaces.empty()) throw std::invalid_argument("polytope: no halfspaces");
  const int dim = static_cast<int>(halfspaces.front().normal.size());
  if (dim != 2 && dim != 3) throw std::invalid_argument("polytope dimension must be 2 or 3");
  std::vector<Halfspace> hs;
  for (const auto& h : halfspaces) {
    if (h.normal.size() != dim) throw std::invalid_argument("polytope: mixed dimensions");
    push_unique(hs, normalized(h), 1e-12);
  }
  check_bounded(hs, dim);
  std::vector<Point> verts = enumerate_vertices(hs, dim, 1e-9);
  if (verts.empty()) throw std::invalid_argument("polytope: empty halfspace system");

  Polytope P;
  P.dim_ = dim;
  if (affine_rank(verts, tol) < dim) {
    P.vertices_ = dim == 2 ? convex_hull_2d(verts, tol) : verts;
    return P;
  }
  if (dim == 2) {
    P.vertices_ = convex_hull_2d(verts, tol);
  } else {
    P.vertices_ = std::move(verts);
  }
  // Keep only halfspaces that touch the body (support at least dim vertices).
  for (const auto& h : hs) {
    int touching = 0;
    for (const auto& v : P.vertices_)
      if (std::abs(h.slack(v)) <= 1e-8 * std::max(1.0, std::abs(h.offset))) ++touching;
    if (touching >= dim) P.halfspaces_.push_back(h);
  }
  return P;
}

Polytope Polytope::box(const Point& lo, const Point& hi) {
  const int dim = static_cast<int>(lo.size());
  std::vector<Halfspace> hs;
  for (int d = 0; d < dim; ++d) {
    Point e = Point::Zero(dim);
    e(d) = 1.0;
    hs.push_back({e, hi(d)});
    hs.push_back({-e, -lo(d)});
  }
  return from_halfspaces(hs);
}

bool Polytope::contains(const Point& x, double eps) const {
  if (halfspaces_.empty()) return false;
  for (const auto& h : halfspaces_)
    if (h.slack(x) < -eps) return false;
  return true;
}

Polytope Polytope::clip(const Halfspace& h, const Tolerance& tol) const {
  std::vector<Halfspace> hs = halfspaces_;
  hs.push_back(h);
  return from_halfspaces(hs, tol);
}

Point Polytope::lower_corner() const {
  Point lo = vertices_.front();
  for (const auto& v : vertices_) lo = lo.cwiseMin(v);
  return lo;
}

Point Polytope::upper_corner() const {
  Point hi = vertices_.front();
  for (const auto& v : vertices_) hi = hi.cwiseMax(v);
  return hi;
}

Point Polytope::centroid() const {
  Point c = Point::Zero(dim_);
  for (const auto& v : vertices_) c += v;
  return c / static_cast<double>(vertices_.size());
}

Point Fan::direction(int j) const {
  const double a = rotation + 2.0 * M_PI * j / m;
  return make_point({std::cos(a), std::sin(a)});
}

// ---------------------------------------------------------------------------
// Minimum enclosing ball

namespace {

Ball ball_through(const std::vector<const Point*>& R, int dim) {
  if (R.empty()) return {Point::Zero(dim), -1.0};
  const Point& p0 = *R.front();
  if (R.size() == 1) return {p0, 0.0};
  const auto k = static_cast<Eigen::Index>(R.size() - 1);
  Eigen::MatrixXd A(k, dim);
  Eigen::VectorXd rhs(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    A.row(i) = (*R[i + 1] - p0).transpose();
    rhs(i) = 0.5 * A.row(i).squaredNorm();
  }
  const Eigen::MatrixXd G = A * A.transpose();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(G);
  Ball out;
  if (qr.rank() == k) {
    out.center = p0 + A.transpose() * qr.solve(rhs);
  } else {
    // Affinely dependent support: center on the farthest pair.
    std::size_t a = 0, b = 1;
    double best = -1.0;
    for (std::size_t i = 0; i < R.size(); ++i)
      for (std::size_t j = i + 1; j < R.size(); ++j)
        if (double d = (*R[i] - *R[j]).squaredNorm(); d > best) best = d, a = i, b = j;
    out.center = 0.5 * (*R[a] + *R[b]);
  }
  out.radius = 0.0;
  for (const Point* p : R) out.radius = std::max(out.radius, (*p - out.center).norm());
  return out;
}

Ball welzl(const std::vector<const Point*>& pts, std::size_t end, std::vector<const Point*>& R, int dim,
           double eps) {
  Ball D = ball_through(R, dim);
  if (static_cast<int>(R.size()) == dim + 1) return D;
  for (std::size_t j = 0; j < end; ++j) {
    if (D.radius >= 0.0 && D.contains(*pts[j], eps)) continue;
    R.push_back(pts[j]);
    D = welzl(pts, j, R, dim, eps);
    R.pop_back();
  }
  return D;
}

std::uint64_t hash_points(std::span<const Point> points) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& p : points)
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      h ^= std::bit_cast<std::uint64_t>(p(i));
      h *= 1099511628211ULL;
    }
  return h;
}

}  // namespace

Ball min_enclosing_ball(std::span<const Point> points, const Tolerance& tol) {
  if (points.empty()) throw std::invalid_argument("min_enclosing_ball: empty input");
  const int dim = static_cast<int>(points.front().size());
  for (const auto& p : points)
    if (p.size() != dim) throw std::invalid_argument("min_enclosing_ball: mixed dimensions");
  std::vector<const Point*> pts;
  pts.reserve(points.size());
  for (const auto& p : points) pts.push_back(&p);
  std::mt19937_64 rng(hash_points(points));
  std::shuffle(pts.begin(), pts.end(), rng);
  std::vector<const Point*> R;
  Ball b = welzl(pts, pts.size(), R, dim, tol.eps_geom);
  // Guard against tolerance drift: the result must cover every point.
  for (const auto& p : points) b.radius = std::max(b.radius, (p - b.center).norm());
  return b;
}

// ---------------------------------------------------------------------------
// Chebyshev ball

Ball chebyshev_ball(std::span<const Halfspace> halfspaces, int dim, const Tolerance& tol) {
  const auto m = static_cast<Eigen::Index>(halfspaces.size());
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m + 1, dim + 1);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(m + 1);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& h = halfspaces[static_cast<std::size_t>(i)];
    A.row(i).head(dim) = h.normal.transpose();
    A(i, dim) = h.normal.norm();
    b(i) = h.offset;
  }
  A(m, dim) = -1.0;  // r >= 0
  Eigen::VectorXd c = Eigen::VectorXd::Zero(dim + 1);
  c(dim) = 1.0;
  const LpResult r = solve_lp(A, b, c);
  if (r.status == LpStatus::Unbounded) throw std::invalid_argument("chebyshev_ball: unbounded body");
  if (r.status == LpStatus::Infeasible) throw std::invalid_argument("chebyshev_ball: empty body");
  if (r.x(dim) <= tol.eps_geom) throw std::invalid_argument("chebyshev_ball: empty interior");
  return {r.x.head(dim), r.x(dim)};
}

Ball chebyshev_ball(const Polytope& body, const Tolerance& tol) {
  if (!body.full_dimensional()) throw std::invalid_argument("chebyshev_ball: empty interior");
  return chebyshev_ball(body.halfspaces(), body.dim(), tol);
}

// ---------------------------------------------------------------------------
// Rank, circumcenter, distances

int affine_rank(std::span<const Point> points, const Tolerance& tol) {
  if (points.empty()) throw std::invalid_argument("affine_rank: empty input");
  if (points.size() == 1) return 0;
  const auto dim = points.front().size();
  const auto m = static_cast<Eigen::Index>(points.size() - 1);
  Eigen::MatrixXd D(m, dim);
  double scale = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    D.row(i) = (points[static_cast<std::size_t>(i + 1)] - points.front()).transpose();
    scale = std::max(scale, D.row(i).norm());
  }
  if (scale == 0.0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(D);
  const double thresh = tol.eps_geom * scale * std::sqrt(static_cast<double>(m));
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > thresh) ++rank;
  return rank;
}

Point circumcenter(std::span<const Point> simplex, const Tolerance& tol) {
  if (simplex.empty()) throw std::invalid_argument("circumcenter: empty simplex");
  if (affine_rank(simplex, tol) != static_cast<int>(simplex.size()) - 1)
    throw std::invalid_argument("circumcenter: degenerate simplex");
  std::vector<const Point*> R;
  for (const auto& p : simplex) R.push_back(&p);
  return ball_through(R, static_cast<int>(simplex.front().size())).center;
}

double dist_to_ray(const Point& x, const Point& origin, const Point& direction) {
  const double t = std::max(0.0, (x - origin).dot(direction) / direction.squaredNorm());
  return (x - origin - t * direction).norm();
}

double dist_to_segment(const Point& x, const Point& a, const Point& b) {
  const Point d = b - a;
  const double len2 = d.squaredNorm();
  if (len2 == 0.0) return (x - a).norm();
  const double t = std::clamp((x - a).dot(d) / len2, 0.0, 1.0);
  return (x - a - t * d).norm();
}

double dist_to_fan(const Point& x, const Fan& fan) {
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < fan.m; ++j) best = std::min(best, dist_to_ray(x, fan.apex, fan.direction(j)));
  return best;
}

std::optional<double> distance_to_polyhedron(const Point& x, std::span<const Halfspace> halfspaces,
                                             const Tolerance& tol) {
  const auto dim = static_cast<int>(x.size());
  const std::size_t m = halfspaces.size();
  double scale = 1.0;
  for (const auto& h : halfspaces) scale = std::max(scale, std::abs(h.offset));
  const double eps = tol.eps_geom * scale;
  auto feasible = [&](const Point& y) {
    for (const auto& h : halfspaces)
      if (h.slack(y) < -eps * h.normal.norm()) return false;
    return true;
  };
  if (feasible(x)) return 0.0;

  std::optional<double> best;
  std::vector<std::size_t> subset;
  auto try_subset = [&]() {
    const auto k = static_cast<Eigen::Index>(subset.size());
    Eigen::MatrixXd N(k, dim);
    Eigen::VectorXd r(k);
    for (Eigen::Index i = 0; i < k; ++i) {
      const auto& h = halfspaces[subset[static_cast<std::size_t>(i)]];
      N.row(i) = h.normal.transpose();
      r(i) = h.normal.dot(x) - h.offset;
    }
    const Eigen::MatrixXd G = N * N.transpose();
    Eigen::LDLT<Eigen::MatrixXd> ldlt(G);
    if (std::abs(G.determinant()) < 1e-14) return;
    const Point y = x - N.transpose() * ldlt.solve(r);
    if (!feasible(y)) return;
    const double d = (y - x).norm();
    if (!best || d < *best) best = d;
  };
  // Enumerate subsets of size 1..dim.
  auto recurse = [&](auto&& self, std::size_t start) -> void {
    if (!subset.empty()) try_subset();
    if (static_cast<int>(subset.size()) == dim) return;
    for (std::size_t i = start; i < m; ++i) {
      subset.push_back(i);
      self(self, i + 1);
      subset.pop_back();
    }
  };
  recurse(recurse, 0);
  return best;
}

Eigen::MatrixXd orthogonal_complement(const Eigen::MatrixXd& basis) {
  const auto n = basis.rows();
  const auto k = basis.cols();
  if (k == 0) return Eigen::MatrixXd::Identity(n, n);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis);
  const Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  return Q.rightCols(n - k);
}

}  // namespace mplank
