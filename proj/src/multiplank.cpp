#include "mplank/multiplank.hpp"

#include "mplank/inradii.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mplank {

std::string_view to_string(Membership m) {
  switch (m) {
    case Membership::Inside: return "inside";
    case Membership::Boundary: return "boundary";
    case Membership::Outside: return "outside";
  }
  return "?";
}

GeneratingSet::GeneratingSet(std::vector<Point> points, const Tolerance& tol) {
  if (points.empty()) throw std::invalid_argument("generating set: no points");
  const auto dim = points.front().size();
  double scale = 1.0;
  for (const auto& p : points) {
    if (p.size() != dim) throw std::invalid_argument("generating set: mixed dimensions");
    if (!p.allFinite()) throw std::invalid_argument("generating set: non-finite coordinate");
    scale = std::max(scale, p.norm());
  }
  for (auto& p : points) {
    const bool dup = std::any_of(points_.begin(), points_.end(),
                                 [&](const Point& q) { return (q - p).norm() <= tol.eps_geom * scale; });
    if (!dup) points_.push_back(std::move(p));
  }
  if (points_.size() < 2) throw std::invalid_argument("generating set: need at least 2 distinct points");
  meb_ = min_enclosing_ball(points_, tol);
}

bool GeneratingSet::centered(double eps) const { return meb_.center.norm() <= eps * std::max(1.0, meb_.radius); }

CenteredSet center(std::span<const Point> points, const Tolerance& tol) {
  if (points.size() < 2) throw std::invalid_argument("center: need at least 2 points");
  const Ball b = min_enclosing_ball(points, tol);
  std::vector<Point> shifted;
  shifted.reserve(points.size());
  for (const auto& p : points) shifted.push_back(p - b.center);
  return {GeneratingSet(std::move(shifted), tol), Point(-b.center)};
}

MultiPlank::MultiPlank(GeneratingSet gen, Point translation, bool closed, const Tolerance& tol)
    : gen_(std::move(gen)), translation_(std::move(translation)), closed_(closed), tol_(tol) {
  tol_.validate();
  if (translation_.size() != gen_.dim()) throw std::invalid_argument("multi-plank: translation dimension mismatch");
  // MEB centers come out of a floating-point solve; allow a few ulps of slack.
  if (!gen_.centered(std::max(tol_.eps_geom, 1e-10)))
    throw std::invalid_argument("multi-plank: generating set is not centered");
  rank_ = affine_rank(gen_.points(), tol_);
}

MultiPlank MultiPlank::centered(std::vector<Point> points, bool closed, const Tolerance& tol) {
  GeneratingSet g(std::move(points), tol);
  const auto dim = g.dim();
  return MultiPlank(std::move(g), Point::Zero(dim), closed, tol);
}

std::vector<std::vector<Halfspace>> MultiPlank::complement_cells() const {
  // x in v^j + A_{-V}^j  <=>  <x - t, d> >= |d|^2 / 2 for d = v^j - v^j', all j'.
  const auto& V = gen_.points();
  std::vector<std::vector<Halfspace>> cells(V.size());
  for (std::size_t j = 0; j < V.size(); ++j)
    for (std::size_t jp = 0; jp < V.size(); ++jp) {
      if (jp == j) continue;
      const Point d = V[j] - V[jp];
      cells[j].push_back({Point(-d), -0.5 * d.squaredNorm() - d.dot(translation_)});
    }
  return cells;
}

namespace {

// |x + d| - |x|, evaluated without cancellation.
double growth(const Point& x, const Point& d) {
  const double num = 2.0 * x.dot(d) + d.squaredNorm();
  const double den = x.norm() + (x + d).norm();
  return den > 0.0 ? num / den : 0.0;
}

double band(const MultiPlank& P) { return P.tolerance().eps_geom * std::max(1.0, P.generators().radius()); }

Membership classify(double margin, double eps) {
  if (margin > eps) return Membership::Inside;
  if (margin < -eps) return Membership::Outside;
  return Membership::Boundary;
}

void check_dim(const MultiPlank& P, const Point& x) {
  if (x.size() != P.dim()) throw std::invalid_argument("multi-plank: point dimension mismatch");
}

}  // namespace

double membership_margin(const MultiPlank& P, const Point& x) {
  check_dim(P, x);
  const Point y = x - P.translation();
  const auto& V = P.generators().points();
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < V.size(); ++j) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t jp = 0; jp < V.size(); ++jp)
      if (jp != j) best = std::max(best, growth(y, V[jp] - V[j]));
    worst = std::min(worst, best);
  }
  return worst;
}

Membership contains(const MultiPlank& P, const Point& x) { return classify(membership_margin(P, x), band(P)); }

bool covers_point(const MultiPlank& P, const Point& x) {
  const Point y = x - P.translation();
  const auto& V = P.generators().points();
  const double eps = band(P);
  const double need = P.closed() ? -eps : eps;
  for (std::size_t j = 0; j < V.size(); ++j) {
    bool found = false;
    for (std::size_t jp = 0; jp < V.size() && !found; ++jp)
      if (jp != j && growth(y, V[jp] - V[j]) > need) found = true;
    if (!found) return false;
  }
  return true;
}

std::vector<std::size_t> anti_voronoi_indices(std::span<const Point> V, const Point& x, const Tolerance& tol) {
  double far = 0.0;
  for (const auto& v : V) far = std::max(far, (x - v).norm());
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < V.size(); ++j)
    if ((x - V[j]).norm() >= far - tol.eps_geom * std::max(1.0, far)) out.push_back(j);
  return out;
}

double anti_voronoi_depth(std::span<const Point> V, const Point& x, std::size_t j) {
  const Point a = x - V[j];
  double depth = std::numeric_limits<double>::infinity();
  for (std::size_t jp = 0; jp < V.size(); ++jp) {
    if (jp == j) continue;
    const Point b = x - V[jp];
    const double den = a.norm() + b.norm();
    depth = std::min(depth, den > 0.0 ? (a.squaredNorm() - b.squaredNorm()) / den : 0.0);
  }
  return depth;
}

Membership contains_via_cells(const MultiPlank& P, const Point& x) {
  check_dim(P, x);
  const Point y = x - P.translation();
  const auto& V = P.generators().points();
  std::vector<Point> negV;
  negV.reserve(V.size());
  for (const auto& v : V) negV.push_back(-v);
  // x is outside P iff y - v^j lies in A_{-V}^j for some j.
  double deepest = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < V.size(); ++j) deepest = std::max(deepest, anti_voronoi_depth(negV, y - V[j], j));
  return classify(-deepest, band(P));
}

double inradius(const MultiPlank& P) { return P.generators().radius(); }

namespace {

// Smallest subset (size 2..k+1, lexicographic among equal sizes) of unit
// normals whose convex hull has the origin in its relative interior.
std::vector<std::size_t> certifying_subset(const std::vector<Eigen::VectorXd>& normals, int k) {
  const std::size_t m = normals.size();
  std::vector<std::size_t> pick;
  std::vector<std::size_t> found;
  auto relint_origin = [&]() {
    const auto s = static_cast<Eigen::Index>(pick.size());
    const auto d = normals.front().size();
    Eigen::MatrixXd A(d + 1, s);
    for (Eigen::Index i = 0; i < s; ++i) {
      A.col(i).head(d) = normals[pick[static_cast<std::size_t>(i)]];
      A(d, i) = 1.0;
    }
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(d + 1);
    rhs(d) = 1.0;
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
    if (cod.rank() != s) return false;  // affinely dependent picks
    const Eigen::VectorXd lambda = cod.solve(rhs);
    if ((A * lambda - rhs).norm() > 1e-7) return false;
    return lambda.minCoeff() > 1e-9;
  };
  auto search = [&](auto&& self, std::size_t start, std::size_t size) -> bool {
    if (pick.size() == size) return relint_origin();
    for (std::size_t i = start; i < m; ++i) {
      pick.push_back(i);
      if (self(self, i + 1, size)) return true;
      pick.pop_back();
    }
    return false;
  };
  for (std::size_t size = 2; size <= static_cast<std::size_t>(k) + 1 && size <= m; ++size) {
    pick.clear();
    if (search(search, 0, size)) return pick;
  }
  std::vector<std::size_t> all(m);
  for (std::size_t i = 0; i < m; ++i) all[i] = i;
  return all;
}

}  // namespace

SimpleMultiPlank simple_multiplank(const Polytope& C, int k, const Tolerance& tol) {
  const int n = C.dim();
  if (k < 1 || k > n) throw std::invalid_argument("simple_multiplank: need 1 <= k <= n");
  if (!C.full_dimensional()) throw std::invalid_argument("simple_multiplank: body must be full-dimensional");

  const IntrinsicRadius best = upper_intrinsic(C, k, tol);
  const Eigen::MatrixXd& L = best.argmin.basis;

  // Largest k-ball c + B_r in the projection C|L, in L-coordinates, and the
  // outward unit normals of the projection facets it touches.
  Eigen::VectorXd c;
  double r = 0.0;
  std::vector<Eigen::VectorXd> touching;
  if (k == 1) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& v : C.vertices()) {
      const double s = L.col(0).dot(v);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    c = Eigen::VectorXd::Constant(1, 0.5 * (lo + hi));
    r = 0.5 * (hi - lo);
    touching = {Eigen::VectorXd::Constant(1, 1.0), Eigen::VectorXd::Constant(1, -1.0)};
  } else {
    std::vector<Point> projected;
    for (const auto& v : C.vertices()) projected.push_back(L.transpose() * v);
    const Polytope shadow = Polytope::from_vertices(projected, tol);
    const Ball ball = chebyshev_ball(shadow, tol);
    c = ball.center;
    r = ball.radius;
    const double active = 10.0 * tol.eps_opt * std::max(1.0, r);
    for (const auto& h : shadow.halfspaces())
      if (std::abs(h.slack(c) - r) <= active) touching.push_back(h.normal);
  }
  const std::vector<std::size_t> subset = certifying_subset(touching, k);
  std::vector<Point> V;
  for (std::size_t i : subset) V.push_back(L * (r * touching[i]));
  MultiPlank plank(GeneratingSet(std::move(V), tol), L * c, true, tol);
  return {std::move(plank), L, r};
}

MultiPlank plank_union_multiplank(std::span<const Point> u, const Tolerance& tol) {
  if (u.empty()) throw std::invalid_argument("plank_union_multiplank: no planks");
  if (u.size() > 12) throw std::invalid_argument("plank_union_multiplank: at most 12 planks");
  for (const auto& v : u)
    if (v.norm() == 0.0) throw std::invalid_argument("plank_union_multiplank: zero vector");
  std::vector<Point> V;
  const std::size_t count = std::size_t{1} << u.size();
  for (std::size_t mask = 0; mask < count; ++mask) {
    Point s = Point::Zero(u.front().size());
    for (std::size_t i = 0; i < u.size(); ++i) s += ((mask >> i) & 1U) ? Point(-u[i]) : u[i];
    V.push_back(std::move(s));
  }
  return MultiPlank::centered(std::move(V), false, tol);
}

}  // namespace mplank
