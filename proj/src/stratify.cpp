#include "mplank/stratify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mplank {

namespace {

Edge make_edge(std::size_t a, std::size_t b) { return a < b ? Edge{a, b} : Edge{b, a}; }

double orient(const Point& a, const Point& b, const Point& c) { return cross2(b - a, c - a); }

// Triangles with pairwise disjoint interiors: some edge normal separates them.
bool interiors_disjoint(const std::array<Point, 3>& s, const std::array<Point, 3>& t, double eps) {
  auto separated_by = [&](const std::array<Point, 3>& tri) {
    for (std::size_t e = 0; e < 3; ++e) {
      const Point d = tri[(e + 1) % 3] - tri[e];
      const Point n = make_point({d(1), -d(0)}).normalized();
      double smin = std::numeric_limits<double>::infinity(), smax = -smin;
      double tmin = smin, tmax = -smin;
      for (const auto& p : s) smin = std::min(smin, n.dot(p)), smax = std::max(smax, n.dot(p));
      for (const auto& p : t) tmin = std::min(tmin, n.dot(p)), tmax = std::max(tmax, n.dot(p));
      if (smax <= tmin + eps || tmax <= smin + eps) return true;
    }
    return false;
  };
  return separated_by(s) || separated_by(t);
}

std::array<Point, 3> corners(std::span<const Point> V, const Triangle& t) { return {V[t[0]], V[t[1]], V[t[2]]}; }

}  // namespace

FarthestDelaunay farthest_delaunay_2d(std::span<const Point> V, const Tolerance& tol) {
  if (V.empty() || V.front().size() != 2) throw std::invalid_argument("farthest_delaunay_2d: need 2D points");
  if (affine_rank(V, tol) < 2) throw std::invalid_argument("farthest_delaunay_2d: affine rank below 2");
  FarthestDelaunay fd;
  fd.hull = convex_hull_2d_indices(V, tol);
  std::vector<std::size_t> ext = fd.hull;
  std::sort(ext.begin(), ext.end());

  double scale = 1.0;
  for (const auto& p : V) scale = std::max(scale, p.norm());
  const double eps = tol.eps_geom * scale * scale;

  // Upper-hull facets of the lifted points (x, y, x^2 + y^2).
  std::vector<Triangle> valid;
  for (std::size_t a = 0; a < ext.size(); ++a)
    for (std::size_t b = a + 1; b < ext.size(); ++b)
      for (std::size_t c = b + 1; c < ext.size(); ++c) {
        const Point &p = V[ext[a]], &q = V[ext[b]], &r = V[ext[c]];
        if (std::abs(orient(p, q, r)) <= eps) continue;
        Eigen::Matrix3d M;
        M << p(0), p(1), 1.0, q(0), q(1), 1.0, r(0), r(1), 1.0;
        const Eigen::Vector3d plane = M.partialPivLu().solve(
            Eigen::Vector3d(p.squaredNorm(), q.squaredNorm(), r.squaredNorm()));
        bool upper = true;
        for (const auto& s : V)
          if (s.squaredNorm() > plane(0) * s(0) + plane(1) * s(1) + plane(2) + eps) {
            upper = false;
            break;
          }
        if (upper) valid.push_back({ext[a], ext[b], ext[c]});
      }

  std::vector<Point> hull_pts;
  for (std::size_t i : fd.hull) hull_pts.push_back(V[i]);
  const double hull_area = polygon_area(hull_pts);
  double covered = 0.0;
  for (const auto& t : valid) {
    const auto tri = corners(V, t);
    const bool clash = std::any_of(fd.cells.begin(), fd.cells.end(), [&](const Triangle& u) {
      return !interiors_disjoint(tri, corners(V, u), eps);
    });
    if (clash) continue;
    Triangle ccw = t;
    if (orient(tri[0], tri[1], tri[2]) < 0) std::swap(ccw[1], ccw[2]);
    fd.cells.push_back(ccw);
    covered += std::abs(0.5 * orient(tri[0], tri[1], tri[2]));
    if (covered >= hull_area * (1.0 - 1e-9)) break;
  }
  if (covered < hull_area * (1.0 - 1e-7)) throw std::logic_error("farthest_delaunay_2d: incomplete triangulation");
  for (std::size_t ci = 0; ci < fd.cells.size(); ++ci)
    for (std::size_t e = 0; e < 3; ++e)
      fd.adjacency[make_edge(fd.cells[ci][e], fd.cells[ci][(e + 1) % 3])].push_back(ci);
  return fd;
}

bool full_sphere_property(const FarthestDelaunay& fd, std::span<const Point> V, const Tolerance& tol) {
  for (const auto& t : fd.cells) {
    const auto tri = corners(V, t);
    const Point c = circumcenter(tri, tol);
    const double R = (tri[0] - c).norm();
    for (const auto& p : V)
      if ((p - c).norm() > R + tol.eps_geom * std::max(1.0, R)) return false;
  }
  return true;
}

std::vector<CenteredSimplex> centered_simplices(const FarthestDelaunay& fd, std::span<const Point> V,
                                                const Tolerance& tol) {
  std::vector<CenteredSimplex> out;
  for (const auto& t : fd.cells) {
    const auto tri = corners(V, t);
    const Point c = circumcenter(tri, tol);
    CenteredSimplex S;
    S.cell = t;
    S.shift = -c;
    for (std::size_t a = 0; a < 3; ++a) S.vertices[a] = tri[a] - c;
    S.circumradius = S.vertices[0].norm();
    out.push_back(std::move(S));
  }
  double scale = 1.0;
  for (const auto& p : V) scale = std::max(scale, p.norm());
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j)
      if (!interiors_disjoint(out[i].vertices, out[j].vertices, 1e-7 * scale))
        throw std::logic_error("centered_simplices: translated cells overlap");
  return out;
}

Stratification Stratification::build(const GeneratingSet& V, const Tolerance& tol) {
  if (V.dim() != 2) throw std::invalid_argument("stratification: generating set must be 2D");
  Stratification s;
  s.tol_ = tol;
  s.points_ = V.points();
  s.rank_ = affine_rank(s.points_, tol);
  if (s.rank_ == 1) {
    // Product structure: 1D stratification along aff V times its orthogonal line.
    std::size_t far = 1;
    for (std::size_t i = 1; i < s.points_.size(); ++i)
      if ((s.points_[i] - s.points_[0]).norm() > (s.points_[far] - s.points_[0]).norm()) far = i;
    s.line_dir_ = (s.points_[far] - s.points_[0]).normalized();
    s.lo_ = std::numeric_limits<double>::infinity();
    s.hi_ = -s.lo_;
    for (std::size_t i = 0; i < s.points_.size(); ++i) {
      const double t = s.line_dir_.dot(s.points_[i]);
      if (t < s.lo_) s.lo_ = t, s.lo_index_ = i;
      if (t > s.hi_) s.hi_ = t, s.hi_index_ = i;
    }
    const double mid = 0.5 * (s.lo_ + s.hi_);
    s.lo_ -= mid;
    s.hi_ -= mid;
    const Edge e = make_edge(s.lo_index_, s.hi_index_);
    s.strata_.push_back({{1, {e.first, e.second}}, {}});
    s.strata_.push_back({{0, {s.lo_index_}}, {}});
    s.strata_.push_back({{0, {s.hi_index_}}, {}});
    return s;
  }
  if (s.rank_ != 2) throw std::invalid_argument("stratification: generating set has rank 0");

  s.fd_ = farthest_delaunay_2d(s.points_, tol);
  s.simplices_ = centered_simplices(s.fd_, s.points_, tol);

  auto outward = [](const Point& a, const Point& b) {
    const Point d = b - a;  // counterclockwise edge: outward normal on the right
    return Point(make_point({d(1), -d(0)}).normalized());
  };
  for (std::size_t si = 0; si < s.simplices_.size(); ++si) {
    const auto& S = s.simplices_[si];
    StratumId id{2, {S.cell.begin(), S.cell.end()}};
    std::sort(id.vertices.begin(), id.vertices.end());
    s.strata_.push_back({id, {{si, {S.vertices.begin(), S.vertices.end()}, {}}}});
  }
  for (const auto& [edge, cells] : s.fd_.adjacency) {
    Stratum st{{1, {edge.first, edge.second}}, {}};
    for (std::size_t ci : cells) {
      const auto& S = s.simplices_[ci];
      for (std::size_t a = 0; a < 3; ++a) {
        const std::size_t b = (a + 1) % 3;
        if (make_edge(S.cell[a], S.cell[b]) != edge) continue;
        st.pieces.push_back({ci, {S.vertices[a], S.vertices[b]}, {{outward(S.vertices[a], S.vertices[b])}}});
      }
    }
    s.strata_.push_back(std::move(st));
  }
  for (std::size_t v : s.fd_.hull) {
    Stratum st{{0, {v}}, {}};
    for (std::size_t ci = 0; ci < s.simplices_.size(); ++ci) {
      const auto& S = s.simplices_[ci];
      for (std::size_t a = 0; a < 3; ++a) {
        if (S.cell[a] != v) continue;
        const Point& prev = S.vertices[(a + 2) % 3];
        const Point& here = S.vertices[a];
        const Point& next = S.vertices[(a + 1) % 3];
        st.pieces.push_back({ci, {here}, {{outward(prev, here), outward(here, next)}}});
      }
    }
    s.strata_.push_back(std::move(st));
  }
  return s;
}

StratumId Stratification::classify(const Point& x) const {
  if (x.size() != 2) throw std::invalid_argument("stratification: point must be 2D");
  double scale = 1.0;
  for (const auto& p : points_) scale = std::max(scale, p.norm());
  const double eps = tol_.eps_geom * scale;

  if (rank_ == 1) {
    const double t = line_dir_.dot(x);
    if (t < lo_) return {0, {lo_index_}};
    if (t > hi_) return {0, {hi_index_}};
    const Edge e = make_edge(lo_index_, hi_index_);
    return {1, {e.first, e.second}};
  }

  // face of each S_sigma whose relative interior plus normal cone holds x
  std::vector<std::vector<std::size_t>> face(simplices_.size());
  for (std::size_t si = 0; si < simplices_.size(); ++si) {
    const auto& S = simplices_[si];
    const auto& u = S.vertices;
    auto& f = face[si];
    if (orient(u[0], u[1], x) >= -eps && orient(u[1], u[2], x) >= -eps && orient(u[2], u[0], x) >= -eps) {
      f.assign(S.cell.begin(), S.cell.end());
    } else {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t a = 0; a < 3; ++a) {
        const std::size_t b = (a + 1) % 3;
        const Point d = u[b] - u[a];
        const double len2 = d.squaredNorm();
        const double t = std::clamp((x - u[a]).dot(d) / len2, 0.0, 1.0);
        const double dist = (x - u[a] - t * d).norm();
        const double tt = eps / std::sqrt(len2);
        std::vector<std::size_t> cand;
        if (t <= tt) cand = {S.cell[a]};
        else if (t >= 1.0 - tt) cand = {S.cell[b]};
        else cand = {S.cell[a], S.cell[b]};
        if (dist < best - eps || (dist <= best + eps && cand.size() > f.size())) {
          best = std::min(best, dist);
          f = cand;
        }
      }
    }
    std::sort(f.begin(), f.end());
  }
  // ties toward the higher-dimensional stratum
  const Stratum* hit = nullptr;
  for (const auto& st : strata_) {
    bool in = !st.pieces.empty();
    for (const auto& piece : st.pieces) in = in && face[piece.simplex] == st.id.vertices;
    if (in && (!hit || st.id.dim > hit->id.dim)) hit = &st;
  }
  if (hit) return hit->id;
  // only reachable inside the tolerance band
  std::vector<std::size_t> most = face.front();
  for (const auto& f : face)
    if (f.size() > most.size()) most = f;
  return {static_cast<int>(most.size()) - 1, most};
}

double Stratification::vertex_strata_gap(const Point& x) const {
  if (rank_ == 1) {
    const double t = line_dir_.dot(x);
    return std::min(t - lo_, hi_ - t);
  }
  double gap = std::numeric_limits<double>::infinity();
  for (const auto& st : strata_) {
    if (st.id.dim != 0) continue;
    double violation = -std::numeric_limits<double>::infinity();
    for (const auto& piece : st.pieces) {
      const auto& S = simplices_[piece.simplex];
      const Point& here = piece.face.front();
      for (const auto& other : S.vertices) {
        const Point e = other - here;
        if (e.norm() == 0.0) continue;
        violation = std::max(violation, (x - here).dot(e) / e.norm());
      }
    }
    gap = std::min(gap, violation);
  }
  return gap;
}

Membership contains_via_strata(const Stratification& strat, const MultiPlank& P, const Point& x) {
  if (P.dim() != 2) throw std::invalid_argument("contains_via_strata: multi-plank must be 2D");
  if (strat.generator_count() != P.generators().size())
    throw std::invalid_argument("contains_via_strata: stratification built for another generating set");
  if (x.size() != 2) throw std::invalid_argument("contains_via_strata: point dimension mismatch");
  const Point y = x - P.translation();
  const double eps = P.tolerance().eps_geom * std::max(1.0, P.generators().radius());
  if (std::abs(strat.vertex_strata_gap(y)) <= eps) return Membership::Boundary;
  return strat.classify(y).dim >= 1 ? Membership::Inside : Membership::Outside;
}

}  // namespace mplank
