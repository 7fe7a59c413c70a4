// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.

#include "oracles.hpp"

#include "mplank/cli.hpp"
#include "mplank/experiments.hpp"
#include "mplank/inradii.hpp"
#include "mplank/multiplank.hpp"
#include "mplank/normed.hpp"
#include "mplank/render.hpp"
#include "mplank/sampling.hpp"
#include "mplank/stratify.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace mplank;
using oracle::pt;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void criterion(int n, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (dt > budget_s) {
    o.ok = false;
    o.detail += " [over time budget " + std::to_string(static_cast<int>(budget_s)) + " s]";
  }
  if (!o.ok) ++failures;
  std::printf("%s [%d] %s: %s (%.2f s)\n", o.ok ? "PASS" : "FAIL", n, name, o.detail.c_str(), dt);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Fan make_fan(const Point& apex, int m, double rot) {
  Fan f;
  f.apex = apex;
  f.m = m;
  f.rotation = rot;
  return f;
}

// --- 1 ---------------------------------------------------------------------

Outcome pizza() {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ang(0, 2 * M_PI);
  int bad = 0;
  double worst_gap = 0, worst_slack = 1e300, worst_eq = 0;
  for (int m : {2, 3, 4, 6, 8})
    for (int N : {1, 2, 3}) {
      const double bound = pizza_bound(m, N);
      for (int rep = 0; rep < 50; ++rep) {
        std::vector<Fan> fans;
        for (int i = 0; i < N; ++i) fans.push_back(make_fan(random_in_ball(rng, 2, 1.0), m, ang(rng)));
        const auto res = pizza_best_piece(fans, 100'000);
        worst_gap = std::max(worst_gap, res.gap);
        worst_slack = std::min(worst_slack, res.radius + res.gap - bound);
        if (res.radius < bound - res.gap || res.gap > 1e-3) ++bad;
      }
      if (N == 1) {
        const std::vector<Fan> centered = {make_fan(pt(0, 0), m, ang(rng))};
        const auto res = pizza_best_piece(centered, 100'000);
        worst_eq = std::max(worst_eq, std::abs(res.radius - bound));
        if (std::abs(res.radius - bound) > 1e-4) ++bad;
      }
    }
  return {bad == 0, fmt("750 placements, max gap %.2e, min slack %.2e, centered |best - bound| <= %.2e", worst_gap,
                        worst_slack, worst_eq)};
}

// --- 2 ---------------------------------------------------------------------

Outcome definitions() {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g(0, 1);
  long disagree = 0, tested = 0, boundary = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const int dim = trial < 20 ? 2 : 3;
    const int m = 2 + trial % 5;
    const auto c = center(oracle::random_points(rng, dim, m));
    Point t(dim);
    for (int d = 0; d < dim; ++d) t(d) = g(rng);
    const MultiPlank P(c.set, t);
    for (int k = 0; k < 10'000; ++k) {
      Point x(dim);
      for (int d = 0; d < dim; ++d) x(d) = t(d) + 2 * g(rng);
      const auto a = contains(P, x), b = contains_via_cells(P, x);
      if (a == Membership::Boundary || b == Membership::Boundary) {
        ++boundary;
        continue;
      }
      ++tested;
      if (a != b) ++disagree;
    }
  }
  return {disagree == 0, fmt("%.0f Inside/Outside disagreements over %.0f points (%.0f in the boundary band)",
                             double(disagree), double(tested), double(boundary))};
}

// --- 3 ---------------------------------------------------------------------

// nearest point of x on a triangle, then the vertices of the face whose
// relative interior contains it; nullopt when too close to a face boundary
std::optional<std::vector<Point>> nearest_face(const std::array<Point, 3>& T, const Point& x) {
  const Point e1 = T[1] - T[0], e2 = T[2] - T[0];
  Eigen::Matrix2d M;
  M << e1(0), e2(0), e1(1), e2(1);
  auto bary = [&](const Point& y) {
    const Eigen::Vector2d st = M.inverse() * Eigen::Vector2d(y(0) - T[0](0), y(1) - T[0](1));
    return std::array<double, 3>{1 - st(0) - st(1), st(0), st(1)};
  };
  Point y = x;
  auto l = bary(x);
  if (l[0] < 0 || l[1] < 0 || l[2] < 0) {
    double best = 1e300;
    for (int a = 0; a < 3; ++a) {
      const Point p = T[a], q = T[(a + 1) % 3];
      const double s = std::clamp((x - p).dot(q - p) / (q - p).squaredNorm(), 0.0, 1.0);
      const Point z = p + s * (q - p);
      if ((x - z).norm() < best) best = (x - z).norm(), y = z;
    }
    l = bary(y);
  }
  std::vector<Point> face;
  for (int a = 0; a < 3; ++a) {
    if (l[a] > 1e-7) face.push_back(T[a]);
    else if (l[a] > 1e-11) return std::nullopt;
  }
  return face;
}

bool same_face(const std::vector<Point>& a, const std::vector<Point>& b) {
  if (a.size() != b.size()) return false;
  for (const auto& p : a) {
    bool found = false;
    for (const auto& q : b) found = found || (p - q).norm() < 1e-9;
    if (!found) return false;
  }
  return true;
}

Outcome stratification() {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0, 1.5);
  long disagree = 0, multi = 0, tested = 0, sphere_fail = 0;
  for (int trial = 0; trial < 20; ++trial) {
    auto V = oracle::random_centered_2d(rng, 3 + trial % 6);
    const auto P = MultiPlank::centered(V);
    const auto st = Stratification::build(P.generators());
    if (!full_sphere_property(st.triangulation(), P.generators().points())) ++sphere_fail;
    // independent full-sphere test on every cell against all of V
    for (const auto& c : st.triangulation().cells) {
      const auto& W = P.generators().points();
      const Point cc = circumcenter(std::vector<Point>{W[c[0]], W[c[1]], W[c[2]]});
      const double R = (W[c[0]] - cc).norm();
      for (const auto& w : W)
        if ((w - cc).norm() > R * (1 + 1e-9)) ++sphere_fail;
    }
    for (int k = 0; k < 10'000; ++k) {
      const Point x = pt(g(rng), g(rng));
      const auto a = contains(P, x), b = contains_via_strata(st, P, x);
      if (a != Membership::Boundary && b != Membership::Boundary && a != b) ++disagree;
      // count the strata containing x from their face + normal-cone pieces
      std::vector<std::optional<std::vector<Point>>> near;
      bool ambiguous = false;
      for (const auto& S : st.simplices()) {
        near.push_back(nearest_face(S.vertices, x));
        ambiguous = ambiguous || !near.back();
      }
      if (ambiguous) continue;
      ++tested;
      int count = 0;
      for (const auto& s : st.strata()) {
        bool in = !s.pieces.empty();
        for (const auto& piece : s.pieces) in = in && same_face(*near[piece.simplex], piece.face);
        count += in;
      }
      if (count != 1) ++multi;
    }
  }
  return {disagree == 0 && multi == 0 && sphere_fail == 0,
          fmt("%.0f membership disagreements, %.0f points not in exactly one stratum (of %.0f), ", double(disagree),
              double(multi), double(tested)) +
              std::to_string(sphere_fail) + " full-sphere failures"};
}

// --- 4 ---------------------------------------------------------------------

Outcome escape() {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g(0, 1);
  int violations = 0;
  std::size_t maximizers = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = 2 + trial % 2, N = 1 + trial % 4;
    std::vector<MultiPlank> planks;
    for (int i = 0; i < N; ++i) {
      const auto c = center(oracle::random_points(rng, dim, 2 + (trial * 7 + i) % 4));
      planks.emplace_back(c.set, Point::Zero(dim));
    }
    for (int k = 0; k < 10; ++k) {
      Point s(dim);
      for (int d = 0; d < dim; ++d) s(d) = g(rng);
      const auto rep = farthest_escape_check(planks, s);
      maximizers += rep.maximizers.size();
      for (const auto& row : rep.verdicts)
        for (auto v : row) violations += v == Membership::Inside;
    }
  }
  return {violations == 0,
          std::to_string(violations) + " maximizers strictly inside a plank (" + std::to_string(maximizers) +
              " maximizers over 1000 shifted Bang sets)"};
}

// --- 5 ---------------------------------------------------------------------

Outcome inscribed() {
  std::mt19937_64 rng(5);
  int bad = 0;
  double worst = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto V = oracle::random_centered_2d(rng, 2 + trial % 6);
    const auto P = MultiPlank::centered(V);
    const double r = P.generators().radius();
    if (!sphere_inside(P, pt(0, 0), r - 1e-6, 10'000)) ++bad;
    const double got = multiplank_inscribed_radius(P).radius;
    worst = std::max(worst, std::abs(got - r));
    if (std::abs(got - r) > 1e-3) ++bad;
  }
  return {bad == 0, fmt("max |inscribed - r(V)| = %.2e", worst)};
}

// --- 6 ---------------------------------------------------------------------

Outcome plank_union() {
  std::mt19937_64 rng(6);
  long outside = 0, tested = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int count = 1 + trial % 4;
    std::vector<Point> u;
    std::uniform_real_distribution<double> ang(0, M_PI), len(0.3, 1.5);
    for (int i = 0; i < count; ++i) {
      const double a = ang(rng), l = len(rng);
      u.push_back(pt(l * std::cos(a), l * std::sin(a)));
    }
    const auto P = plank_union_multiplank(u);
    const double R = 3 * P.generators().radius();
    std::uniform_real_distribution<double> box(-R, R);
    int kept = 0;
    while (kept < 10'000) {
      const Point x = pt(box(rng), box(rng));
      bool in = false;
      for (const auto& ui : u) in = in || std::abs(x.dot(ui)) < ui.squaredNorm();
      if (!in) continue;
      ++kept;
      ++tested;
      if (contains(P, x) != Membership::Inside) ++outside;
    }
  }
  const auto A = plank_union_multiplank(std::vector<Point>{pt(1, 0), pt(0, 1)});
  const double r = A.generators().radius();
  const bool anchor = std::abs(r - std::sqrt(2.0)) < 1e-12 && r < 2.0;
  return {outside == 0 && anchor, fmt("%.0f of %.0f union samples not Inside; orthogonal pair inradius %.15f", double(outside),
                                      double(tested), r)};
}

// --- 7 ---------------------------------------------------------------------

std::vector<Polytope> chord_split(const Polytope& K, std::mt19937_64& rng, int chords) {
  std::uniform_real_distribution<double> ang(0, M_PI), off(-0.3, 0.3);
  std::vector<Polytope> pieces = {K};
  const Point c = chebyshev_ball(K).center;
  for (int i = 0; i < chords; ++i) {
    const double a = ang(rng);
    const Point n = pt(std::cos(a), std::sin(a));
    const double o = n.dot(c) + off(rng);
    std::vector<Polytope> next;
    for (const auto& p : pieces) {
      double lo = 1e300, hi = -1e300;
      for (const auto& v : p.vertices()) lo = std::min(lo, n.dot(v)), hi = std::max(hi, n.dot(v));
      if (o <= lo + 1e-6 || o >= hi - 1e-6) {
        next.push_back(p);
        continue;
      }
      next.push_back(p.clip({n, o}));
      next.push_back(p.clip({-n, -o}));
    }
    pieces = next;
  }
  return pieces;
}

Outcome subadditivity() {
  std::mt19937_64 rng(7);
  int bad = 0;
  double worst = 1e300;
  for (int trial = 0; trial < 30; ++trial) {
    const Polytope K =
        trial % 2 ? Polytope::polygon(oracle::random_polygon(rng, 5 + trial % 5)) : Polytope::box(pt(0, 0), pt(1, 1));
    const auto pieces = chord_split(K, rng, 1 + trial % 3);
    for (int k : {1, 2}) {
      double lhs = 0;
      for (const auto& p : pieces) lhs += upper_intrinsic(p, k).value;
      const double rhs = lower_intrinsic(K, k).value;
      worst = std::min(worst, lhs - rhs);
      if (lhs < rhs - 1e-6) ++bad;
    }
  }
  const auto c = center(std::vector<Point>{pt(0.25, 0), pt(-0.25, 0)});
  CoveringInstance inst{Polytope::box(pt(0, 0), pt(1, 1)),
                        {MultiPlank(c.set, pt(0.25, 0.5), true), MultiPlank(c.set, pt(0.75, 0.5), true)},
                        1};
  const auto rep = verify_pants_inequality(inst);
  const bool anchor = rep.holds && std::abs(rep.lhs - rep.rhs) < 1e-6;
  return {bad == 0 && anchor,
          fmt("min(sum - r_(k)) = %.3e over 60 checks; equality anchor lhs %.9f rhs %.9f", worst, rep.lhs, rep.rhs)};
}

// --- 8 ---------------------------------------------------------------------

Outcome anchors() {
  const auto sq = Polytope::box(pt(0, 0), pt(1, 1));
  const auto tri = Polytope::polygon(std::vector<Point>{pt(0, 0), pt(1, 0), pt(0.5, std::sqrt(3.0) / 2)});
  const auto tet =
      Polytope::from_vertices(std::vector<Point>{pt(1, 1, 1), pt(1, -1, -1), pt(-1, 1, -1), pt(-1, -1, 1)});
  double err = 0;
  for (int k : {1, 2}) {
    err = std::max(err, std::abs(upper_intrinsic(sq, k).value - 0.5));
    err = std::max(err, std::abs(lower_intrinsic(sq, k).value - 0.5));
  }
  err = std::max(err, std::abs(upper_intrinsic(tri, 1).value - std::sqrt(3.0) / 4));
  err = std::max(err, std::abs(lower_intrinsic(tri, 1).value - std::sqrt(3.0) / 4));
  err = std::max(err, std::abs(upper_intrinsic(tri, 2).value - std::sqrt(3.0) / 6));
  err = std::max(err, std::abs(lower_intrinsic(tri, 2).value - std::sqrt(3.0) / 6));
  const double up = upper_intrinsic(tet, 2).value, lo = lower_intrinsic(tet, 2).value;
  return {err <= 1e-4 && up - lo > 1e-3,
          fmt("max anchor error %.2e; tetrahedron r^(2) = %.6f, r_(2) = %.6f", err, up, lo)};
}

// --- 9 ---------------------------------------------------------------------

Outcome half_angles() {
  double err = 0;
  for (int m = 2; m <= 12; ++m) {
    err = std::max(err, std::abs(fan_half_angle({FanFamily::MFan, m, {}}) - M_PI / m));
    const auto orbit = circle_orbit(m, 0.37 * m);
    err = std::max(err, std::abs(fan_half_angle({FanFamily::Orbit, 0, orbit}) - M_PI / m));
  }
  err = std::max(err, std::abs(fan_half_angle({FanFamily::RegularSimplex, 3, {}}) - std::acos(1.0 / 3)));
  err = std::max(err, std::abs(fan_half_angle({FanFamily::CoxeterA, 3, {}}) - std::acos(0.25)));
  return {err <= 1e-9, fmt("max error %.2e", err)};
}

// --- 10 --------------------------------------------------------------------

Outcome normed() {
  std::mt19937_64 rng(10);
  std::normal_distribution<double> g(0, 1.5);
  const Gauge B = Gauge::regular(256);
  long member_bad = 0, escape_bad = 0, tri_bad = 0;
  double radius_err = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const auto V = oracle::random_centered_2d(rng, 2 + trial % 5);
    const auto P = MultiPlank::centered(V);
    const NormedMultiPlank N(normed_center(V, B), B);
    for (int k = 0; k < 1000; ++k) {
      const Point x = pt(g(rng), g(rng));
      const double m = membership_margin(P, x);
      if (std::abs(m) < 1e-2) continue;
      if ((normed_contains(N, x) == Membership::Inside) != (m > 0)) ++member_bad;
    }
    const auto K = Polytope::polygon(oracle::random_polygon(rng, 6));
    for (int k : {1, 2}) {
      radius_err = std::max(radius_err, std::abs(normed_upper_intrinsic(K, k, B) - upper_intrinsic(K, k).value));
      radius_err = std::max(radius_err, std::abs(normed_lower_intrinsic(K, k, B) - lower_intrinsic(K, k).value));
    }
    std::vector<MultiPlank> ep;
    std::vector<NormedMultiPlank> np;
    for (int i = 0; i < 2; ++i) {
      const auto W = oracle::random_centered_2d(rng, 3);
      ep.push_back(MultiPlank::centered(W));
      np.emplace_back(normed_center(W, B), B);
    }
    for (int k = 0; k < 5; ++k) {
      const Point s = pt(g(rng), g(rng));
      if (normed_farthest_escape_check(np, s).holds != farthest_escape_check(ep, s).holds) ++escape_bad;
    }
  }
  const Gauge T(std::vector<Point>{pt(2, 0), pt(0, 1), pt(-1, -1)});
  for (int k = 0; k < 10'000; ++k) {
    const Point x = pt(g(rng), g(rng)), y = pt(g(rng), g(rng));
    if (T.norm(x + y) > T.norm(x) + T.norm(y) + 1e-12) ++tri_bad;
    if (B.norm(x + y) > B.norm(x) + B.norm(y) + 1e-12) ++tri_bad;
  }
  return {member_bad == 0 && escape_bad == 0 && tri_bad == 0 && radius_err <= 1e-2,
          fmt("membership mismatches %.0f, escape mismatches %.0f, max radius difference %.2e", double(member_bad),
              double(escape_bad), radius_err) +
              ", triangle inequality failures " + std::to_string(tri_bad)};
}

// --- 11 --------------------------------------------------------------------

Outcome sharpness() {
  double prev = 1e300;
  bool ok = true;
  std::string detail;
  for (int N : {10, 20, 40}) {
    const double r = min_covering_radius(N, 100'000);
    ok = ok && r < prev && r >= 0.5;
    prev = r;
    detail += fmt("N=%.0f: %.5f  ", N, r);
  }
  return {ok, detail};
}

// --- 12 --------------------------------------------------------------------

std::string run_cli_capture(std::vector<std::string> args) {
  args.insert(args.begin(), "multiplank");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return std::to_string(code) + "\n" + out.str();
}

std::string full_run(const std::string& scene, const std::string& pizza, const std::string& svg) {
  std::string all;
  for (const char* cmd : {"meb", "inradii", "plank-check", "stratify", "normed"})
    all += run_cli_capture({cmd, "--scene", scene, "--k", "2"});
  all += run_cli_capture({"verify", "--scene", scene, "--k", "2"});
  all += run_cli_capture({"pizza", "--scene", pizza});
  all += run_cli_capture({"sharpness", "--N", "10", "--r", "0.6"});
  all += run_cli_capture({"render", "--strata", "--scene", scene, "--out", svg});
  std::ifstream in(svg);
  std::stringstream ss;
  ss << in.rdbuf();
  return all + ss.str();
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "mplank_acceptance";
  fs::create_directories(dir);
  const std::string scene = (dir / "scene.json").string(), pizza = (dir / "pizza.json").string();
  std::ofstream(scene) << R"({"dim":2,"seed":42,
    "generating_sets":[[[1,0],[-0.5,0.8660254037844386],[-0.5,-0.8660254037844386]],[[0.3,0.6],[-0.3,-0.6]]],
    "bodies":{"K":{"polygon":[[-0.6,-0.5],[0.7,-0.4],[0.5,0.6],[-0.4,0.5]]}},
    "fans":[{"apex":[0.2,-0.1],"m":3,"rotation":0.5}],
    "gauge":{"polygon":[[1,0],[0.5,0.8660254037844386],[-0.5,0.8660254037844386],[-1,0],[-0.5,-0.8660254037844386],[0.5,-0.8660254037844386]]},
    "planks":[[1,0],[0,1]]})";
  std::ofstream(pizza) << R"({"dim":2,"fans":[{"apex":[0.1,0.2],"m":4,"rotation":0.3},{"apex":[-0.3,0],"m":4,"rotation":1.0}]})";
  const char* prev = std::getenv("MULTIPLANK_THREADS");
  const std::string saved = prev ? prev : "";
  std::vector<std::string> runs;
  for (const char* threads : {"1", "1", "4"}) {
    setenv("MULTIPLANK_THREADS", threads, 1);
    runs.push_back(full_run(scene, pizza, (dir / "out.svg").string()));
  }
  if (prev) setenv("MULTIPLANK_THREADS", saved.c_str(), 1);
  else unsetenv("MULTIPLANK_THREADS");
  const bool same = runs[0] == runs[1] && runs[0] == runs[2];
  return {same, std::to_string(runs[0].size()) + " report bytes, reruns and 1 vs 4 threads " +
                    (same ? "identical" : "differ")};
}

}  // namespace

int main() {
  criterion(1, "pizza bound", 120, pizza);
  criterion(2, "definition equivalence", 30, definitions);
  criterion(3, "stratification", 60, stratification);
  criterion(4, "farthest-point escape", 30, escape);
  criterion(5, "inscribed ball of radius r(V)", 60, inscribed);
  criterion(6, "plank union multi-plank", 20, plank_union);
  criterion(7, "subadditivity", 120, subadditivity);
  criterion(8, "intrinsic radii anchors", 120, anchors);
  criterion(9, "fan half-angles", 1, half_angles);
  criterion(10, "normed specialization", 60, normed);
  criterion(11, "sharpness trend", 120, sharpness);
  criterion(12, "determinism", 600, determinism);
  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
