#include "mplank/render.hpp"

#include "mplank/multiplank.hpp"
#include "mplank/normed.hpp"
#include "mplank/sampling.hpp"
#include "mplank/stratify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace mplank {

namespace {

constexpr double kCanvas = 800.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

struct Canvas {
  Viewport view;
  double px(double x) const { return (x - view.x0) / view.size * kCanvas; }
  double py(double y) const { return kCanvas - (y - view.y0) / view.size * kCanvas; }
  std::string xy(const Point& p) const { return num(px(p(0))) + "," + num(py(p(1))); }
};

std::vector<MultiPlank> scene_planks(const Scene& s, bool closed) {
  std::vector<MultiPlank> out;
  const Tolerance tol = s.tolerance();
  for (std::size_t i = 0; i < s.generating_sets.size(); ++i) {
    const CenteredSet c = center(s.generating_sets[i], tol);
    out.emplace_back(c.set, s.translation(i), closed, tol);
  }
  return out;
}

void polyline(std::ostringstream& o, const Canvas& c, const std::vector<Point>& pts, bool closed_path,
              const char* style) {
  if (pts.empty()) return;
  o << "    <path d=\"M" << c.xy(pts.front());
  for (std::size_t i = 1; i < pts.size(); ++i) o << " L" << c.xy(pts[i]);
  if (closed_path) o << " Z";
  o << "\" " << style << "/>\n";
}

void contour(std::ostringstream& o, const Canvas& c, const ScalarField& f, const char* style) {
  const auto segs = marching_squares(f);
  if (segs.empty()) return;
  o << "    <path d=\"";
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const auto& s = segs[i];
    if (i) o << ' ';
    o << 'M' << num(c.px(s[0])) << ',' << num(c.py(s[1])) << " L" << num(c.px(s[2])) << ',' << num(c.py(s[3]));
  }
  o << "\" " << style << "/>\n";
}

}  // namespace

Viewport scene_viewport(const Scene& s) {
  std::vector<Point> pts;
  const Tolerance tol = s.tolerance();
  if (s.dim == 2) {
    for (std::size_t i = 0; i < s.generating_sets.size(); ++i) {
      const auto& V = s.generating_sets[i];
      if (V.empty()) continue;
      const Ball b = min_enclosing_ball(V, tol);
      const Point t = s.translation(i);
      for (const auto& v : V) pts.push_back(t + v - b.center);
      for (const double dx : {-2.0, 2.0})
        for (const double dy : {-2.0, 2.0}) pts.push_back(t + b.radius * make_point({dx, dy}));
    }
    if (s.K) for (const auto& v : s.K->points) pts.push_back(v);
    for (const auto& b : s.covers)
      for (const auto& v : b.points) pts.push_back(v);
    for (const auto& f : s.fans) {
      pts.push_back(f.apex);
      pts.push_back(make_point({1.0, 1.0}));
      pts.push_back(make_point({-1.0, -1.0}));
    }
    if (s.gauge)
      for (const auto& v : *s.gauge) pts.push_back(v);
    for (const auto& u : s.planks) {
      pts.push_back(2.0 * u);
      pts.push_back(-2.0 * u);
    }
  }
  Viewport view;
  if (pts.empty()) return view;
  Point lo = pts.front(), hi = pts.front();
  for (const auto& p : pts) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const Point mid = 0.5 * (lo + hi);
  const double half = std::max(0.5 * (hi - lo).maxCoeff() * 1.15, 1e-3);
  view.x0 = mid(0) - half;
  view.y0 = mid(1) - half;
  view.size = 2.0 * half;
  return view;
}

ScalarField sample_field(const Viewport& view, int resolution, const std::function<double(const Point&)>& f) {
  if (resolution < 2) throw std::invalid_argument("sample_field: resolution must be at least 2");
  ScalarField out;
  out.view = view;
  out.resolution = resolution;
  const int n = resolution + 1;
  out.values.assign(static_cast<std::size_t>(n) * n, 0.0);
  const double h = view.size / resolution;
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t j) {
    for (int i = 0; i < n; ++i)
      out.values[j * n + i] = f(make_point({view.x0 + i * h, view.y0 + static_cast<double>(j) * h}));
  });
  return out;
}

std::vector<Segment> marching_squares(const ScalarField& field) {
  std::vector<Segment> segs;
  const int R = field.resolution;
  const double h = field.view.size / R;
  auto pos = [&](int i, int j) { return std::array<double, 2>{field.view.x0 + i * h, field.view.y0 + j * h}; };
  auto cut = [&](int i0, int j0, int i1, int j1) {
    const double a = field.at(i0, j0), b = field.at(i1, j1);
    const double t = (a == b) ? 0.5 : a / (a - b);
    const auto p = pos(i0, j0), q = pos(i1, j1);
    return std::array<double, 2>{p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])};
  };
  for (int j = 0; j < R; ++j)
    for (int i = 0; i < R; ++i) {
      // corners: 0 (i,j) 1 (i+1,j) 2 (i+1,j+1) 3 (i,j+1); bit set when positive
      const double v[4] = {field.at(i, j), field.at(i + 1, j), field.at(i + 1, j + 1), field.at(i, j + 1)};
      int mask = 0;
      for (int k = 0; k < 4; ++k)
        if (v[k] > 0.0) mask |= 1 << k;
      if (mask == 0 || mask == 15) continue;
      // edge e joins corner e and corner e+1
      auto edge = [&](int e) {
        switch (e) {
          case 0: return cut(i, j, i + 1, j);
          case 1: return cut(i + 1, j, i + 1, j + 1);
          case 2: return cut(i + 1, j + 1, i, j + 1);
          default: return cut(i, j + 1, i, j);
        }
      };
      std::vector<int> crossed;
      for (int e = 0; e < 4; ++e)
        if (((mask >> e) & 1) != ((mask >> ((e + 1) % 4)) & 1)) crossed.push_back(e);
      if (crossed.size() == 2) {
        const auto a = edge(crossed[0]), b = edge(crossed[1]);
        segs.push_back({a[0], a[1], b[0], b[1]});
        continue;
      }
      // saddle: mask 5 or 10
      const bool center_pos = (v[0] + v[1] + v[2] + v[3]) > 0.0;
      const bool corner0_pos = mask & 1;
      const std::array<std::array<int, 2>, 2> pairs =
          (center_pos == corner0_pos) ? std::array<std::array<int, 2>, 2>{{{0, 1}, {2, 3}}}
                                      : std::array<std::array<int, 2>, 2>{{{3, 0}, {1, 2}}};
      for (const auto& pr : pairs) {
        const auto a = edge(pr[0]), b = edge(pr[1]);
        segs.push_back({a[0], a[1], b[0], b[1]});
      }
    }
  return segs;
}

int field_components(const ScalarField& field, bool positive) {
  const int n = field.resolution + 1;
  std::vector<char> seen(field.values.size(), 0);
  auto want = [&](int i, int j) { return (field.at(i, j) > 0.0) == positive; };
  int count = 0;
  std::vector<std::pair<int, int>> stack;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const auto idx = static_cast<std::size_t>(j) * n + i;
      if (seen[idx] || !want(i, j)) continue;
      ++count;
      seen[idx] = 1;
      stack.push_back({i, j});
      while (!stack.empty()) {
        const auto [a, b] = stack.back();
        stack.pop_back();
        const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
          const int x = a + di[k], y = b + dj[k];
          if (x < 0 || y < 0 || x >= n || y >= n) continue;
          const auto id = static_cast<std::size_t>(y) * n + x;
          if (seen[id] || !want(x, y)) continue;
          seen[id] = 1;
          stack.push_back({x, y});
        }
      }
    }
  return count;
}

std::string render_svg(const Scene& s, const RenderOptions& opt) {
  if (s.dim != 2) throw std::invalid_argument("render: scene must be 2D");
  const Tolerance tol = s.tolerance();
  const Canvas c{scene_viewport(s)};
  const Viewport& view = c.view;
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
  o << "  <rect width=\"800\" height=\"800\" fill=\"white\"/>\n";

  o << "  <g id=\"axes\" stroke=\"#bbbbbb\" stroke-width=\"1\">\n";
  if (view.x0 <= 0.0 && view.x0 + view.size >= 0.0)
    o << "    <line x1=\"" << num(c.px(0)) << "\" y1=\"0.000\" x2=\"" << num(c.px(0)) << "\" y2=\"800.000\"/>\n";
  if (view.y0 <= 0.0 && view.y0 + view.size >= 0.0)
    o << "    <line x1=\"0.000\" y1=\"" << num(c.py(0)) << "\" x2=\"800.000\" y2=\"" << num(c.py(0)) << "\"/>\n";
  o << "  </g>\n";

  o << "  <g id=\"bodies\">\n";
  if (s.K) polyline(o, c, s.K->build(tol).vertices(), true, "fill=\"#f2e6c9\" stroke=\"#8a6d3b\" stroke-width=\"1.5\"");
  for (const auto& b : s.covers)
    polyline(o, c, b.build(tol).vertices(), true, "fill=\"none\" stroke=\"#8a6d3b\" stroke-dasharray=\"4 3\"");
  o << "  </g>\n";

  const std::vector<MultiPlank> planks = scene_planks(s, opt.closed);
  std::vector<NormedMultiPlank> normed;
  std::optional<Gauge> gauge;
  if (s.gauge) {
    gauge.emplace(*s.gauge, tol);
    for (const auto& V : s.generating_sets) normed.emplace_back(V, *gauge, tol);
  }

  o << "  <g id=\"multiplank\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\">\n";
  if (gauge) {
    for (const auto& P : normed)
      contour(o, c, sample_field(view, opt.resolution, [&](const Point& x) { return normed_margin(P, x); }), "");
  } else {
    for (const auto& P : planks)
      contour(o, c, sample_field(view, opt.resolution, [&](const Point& x) { return membership_margin(P, x); }), "");
  }
  if (!s.planks.empty()) {
    const MultiPlank U = plank_union_multiplank(s.planks, tol);
    contour(o, c, sample_field(view, opt.resolution, [&](const Point& x) { return membership_margin(U, x); }),
            "stroke=\"#b03a2e\"");
    for (const auto& u : s.planks) {
      const Point n = u.normalized();
      const Point d = make_point({-n(1), n(0)}) * (2.0 * view.size);
      for (const double side : {-1.0, 1.0}) {
        const Point base = side * u.norm() * n;
        polyline(o, c, {base - d, base + d}, false, "stroke=\"#555555\" stroke-dasharray=\"6 4\"");
      }
    }
  }
  o << "  </g>\n";

  o << "  <g id=\"meb\" fill=\"none\" stroke=\"#999999\" stroke-dasharray=\"3 3\">\n";
  for (const auto& P : planks) {
    const double r = gauge ? 0.0 : P.generators().radius();
    if (r > 0.0)
      o << "    <circle cx=\"" << num(c.px(P.translation()(0))) << "\" cy=\"" << num(c.py(P.translation()(1)))
        << "\" r=\"" << num(r / view.size * kCanvas) << "\"/>\n";
  }
  o << "  </g>\n";

  o << "  <g id=\"generators\" fill=\"#1f4e9c\">\n";
  for (std::size_t i = 0; i < planks.size(); ++i) {
    const auto& pts = gauge ? normed[i].generators() : planks[i].generators().points();
    for (const auto& v : pts) {
      const Point p = planks[i].translation() + v;
      o << "    <circle cx=\"" << num(c.px(p(0))) << "\" cy=\"" << num(c.py(p(1))) << "\" r=\"3.000\"/>\n";
    }
  }
  o << "  </g>\n";

  o << "  <g id=\"strata\" fill=\"none\" stroke=\"#2e7d32\" stroke-width=\"1\">\n";
  if (opt.strata && !gauge) {
    for (const auto& P : planks) {
      if (P.rank() != 2) continue;
      const Stratification st = Stratification::build(P.generators(), tol);
      const Point& t = P.translation();
      for (const auto& S : st.simplices())
        polyline(o, c, {t + S.vertices[0], t + S.vertices[1], t + S.vertices[2]}, true, "");
      for (const auto& stratum : st.strata()) {
        if (stratum.id.dim != 0) continue;
        for (const auto& piece : stratum.pieces)
          for (const auto& ray : piece.cone.rays) {
            const Point a = t + piece.face.front();
            polyline(o, c, {a, a + 2.0 * view.size * ray.normalized()}, false, "stroke-dasharray=\"5 3\"");
          }
      }
    }
  }
  o << "  </g>\n";

  o << "  <g id=\"fans\" stroke=\"#c0392b\" stroke-width=\"2\">\n";
  for (const auto& f : s.fans)
    for (int j = 0; j < f.m; ++j) polyline(o, c, {f.apex, f.apex + 2.0 * view.size * f.direction(j)}, false, "");
  o << "  </g>\n";

  o << "  <g id=\"gauge\" fill=\"none\" stroke=\"#6c3483\" stroke-width=\"1.5\">\n";
  if (gauge) {
    polyline(o, c, gauge->vertices(), true, "");
    o << "    <path d=\"M" << num(c.px(0) - 5) << ',' << num(c.py(0)) << " L" << num(c.px(0) + 5) << ','
      << num(c.py(0)) << " M" << num(c.px(0)) << ',' << num(c.py(0) - 5) << " L" << num(c.px(0)) << ','
      << num(c.py(0) + 5) << "\"/>\n";
  }
  o << "  </g>\n";
  o << "</svg>\n";
  return o.str();
}

}  // namespace mplank
