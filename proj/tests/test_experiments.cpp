#include "doctest.h"
#include "oracles.hpp"

#include "mplank/experiments.hpp"
#include "mplank/sampling.hpp"

#include <random>

using namespace mplank;
using oracle::pt;

namespace {

// disk clearance written from scratch: 1 - |x| and the distance to each ray
double clearance_ref(const Point& x, const std::vector<Fan>& fans) {
  double d = 1 - x.norm();
  for (const auto& f : fans)
    for (int j = 0; j < f.m; ++j) {
      const double a = f.rotation + 2 * M_PI * j / f.m;
      const Point u = pt(std::cos(a), std::sin(a));
      const double s = std::max(0.0, u.dot(x - f.apex));
      d = std::min(d, (x - f.apex - s * u).norm());
    }
  return d;
}

double grid_best(const std::vector<Fan>& fans, int n) {
  double best = 0;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) best = std::max(best, clearance_ref(pt(-1 + 2.0 * i / n, -1 + 2.0 * j / n), fans));
  return best;
}

Fan fan(double x, double y, int m, double rot) {
  Fan f;
  f.apex = pt(x, y);
  f.m = m;
  f.rotation = rot;
  return f;
}

std::vector<Polytope> split(const Polytope& K, std::mt19937_64& rng, int chords) {
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

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("bang set equals the nested-loop minkowski sum") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::vector<Point>> sets;
    for (int i = 0; i < 1 + trial % 4; ++i) sets.push_back(oracle::random_points(rng, 2, 1 + (trial + i) % 5));
    const auto X = bang_set(sets);
    const auto ref = oracle::bang_nested(sets);
    REQUIRE(X.points.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK((X.points[i] - ref[i]).norm() < 1e-12);
  }
  std::vector<std::vector<Point>> big(3, oracle::random_points(rng, 2, 200));
  CHECK_THROWS_AS(bang_set(big), std::length_error);
}

TEST_CASE("farthest point of the bang set escapes every multi-plank") {
  std::mt19937_64 rng(67);
  std::normal_distribution<double> g(0, 1);
  for (int trial = 0; trial < 60; ++trial) {
    const int dim = 2 + trial % 2;
    std::vector<MultiPlank> planks;
    for (int i = 0; i < 1 + trial % 4; ++i) {
      const auto c = center(oracle::random_points(rng, dim, 2 + (trial + i) % 4));
      planks.emplace_back(c.set, Point::Zero(dim));
    }
    for (int k = 0; k < 5; ++k) {
      Point s(dim);
      for (int d = 0; d < dim; ++d) s(d) = g(rng);
      const auto rep = farthest_escape_check(planks, s);
      CHECK(rep.holds);
      CHECK_FALSE(rep.maximizers.empty());
      for (const auto& row : rep.verdicts)
        for (auto v : row) CHECK(v != Membership::Inside);
    }
  }
}

TEST_CASE("symmetric tie lands on the boundary") {
  // X = {+-1} + {+-1} on a line; the maximizers (+-2, 0) sit on plank boundaries
  const auto P = MultiPlank::centered({pt(1, 0), pt(-1, 0)});
  const std::vector<MultiPlank> planks = {P, P};
  const auto rep = farthest_escape_check(planks, pt(0, 0));
  CHECK(rep.holds);
  CHECK(rep.max_norm == doctest::Approx(2.0));
  CHECK(rep.maximizers.size() == 2);
  const MultiPlank shifted(P.generators(), pt(1, 0));
  const std::vector<MultiPlank> bad = {shifted};
  CHECK_THROWS_AS(farthest_escape_check(bad, pt(0, 0)), std::invalid_argument);
}

TEST_CASE("pizza anchors") {
  const std::vector<Fan> none;
  CHECK(pizza_best_piece(none).radius == doctest::Approx(1.0).epsilon(1e-6));
  const std::vector<Fan> line = {fan(0, 0, 2, 0)};
  CHECK(pizza_best_piece(line).radius == doctest::Approx(0.5).epsilon(1e-6));
  for (int m : {3, 4, 6, 8}) {
    const std::vector<Fan> one = {fan(0, 0, m, 0.3)};
    const auto res = pizza_best_piece(one);
    CHECK(std::abs(res.radius - pizza_bound(m, 1)) < 1e-4);
    CHECK(res.gap <= 1e-3);
    CHECK(clearance_ref(res.center, one) == doctest::Approx(res.radius).epsilon(1e-9));
  }
}

TEST_CASE("pizza optimizer against the bound and a grid search") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 12; ++trial) {
    const int m = 2 + trial % 5, N = 1 + trial % 3;
    std::vector<Fan> fans;
    for (int i = 0; i < N; ++i) {
      const Point a = random_in_ball(rng, 2, 1.0);
      fans.push_back(fan(a(0), a(1), m, std::uniform_real_distribution<double>(0, 2 * M_PI)(rng)));
    }
    const auto res = pizza_best_piece(fans);
    CHECK(res.radius + res.gap >= pizza_bound(m, N) - 1e-12);
    const double grid = grid_best(fans, 200);
    CHECK(res.radius >= grid - 1e-12);
    CHECK(res.radius <= grid + 2.0 / 200);
    CHECK(pizza_clearance(res.center, fans) == doctest::Approx(clearance_ref(res.center, fans)));
  }
}

TEST_CASE("pizza bound values and errors") {
  CHECK(pizza_bound(3, 2) == doctest::Approx(std::sin(M_PI / 3) / (2 + std::sin(M_PI / 3))));
  CHECK(pizza_bound(3, 2) == doctest::Approx(0.30217).epsilon(1e-4));
  CHECK(pizza_bound(2, 1) == doctest::Approx(0.5));
  CHECK_THROWS_AS(pizza_bound(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(pizza_bound(3, 0), std::invalid_argument);
}

TEST_CASE("fan neighborhood multi-plank") {
  const double rbar = 0.2;
  for (int m : {2, 3, 5}) {
    const Fan f = fan(0.1, -0.2, m, 0.4);
    const auto P = fan_neighborhood_multiplank(f, rbar);
    CHECK(P.generators().radius() == doctest::Approx(rbar / std::sin(M_PI / m)));
    CHECK(P.generators().size() == static_cast<std::size_t>(m));
    const auto pts = sample_box(pt(-2, -2), pt(2, 2), 10000, 5);
    int bad = 0;
    for (const auto& x : pts) {
      const auto mem = contains(P, x);
      if (mem == Membership::Boundary) continue;
      const bool near = dist_to_fan(x, f) < rbar;
      if (near != (mem == Membership::Inside)) ++bad;
    }
    CHECK(bad == 0);
  }
}

TEST_CASE("fan half angles") {
  for (int m = 2; m <= 9; ++m) {
    CHECK(fan_half_angle({FanFamily::MFan, m, {}}) == doctest::Approx(M_PI / m));
    CHECK(orbit_half_angle(circle_orbit(m, 0.7)) == doctest::Approx(M_PI / m).epsilon(1e-12));
  }
  CHECK(fan_half_angle({FanFamily::RegularSimplex, 3, {}}) == doctest::Approx(std::acos(1.0 / 3)));
  CHECK(fan_half_angle({FanFamily::CoxeterA, 3, {}}) == doctest::Approx(std::acos(0.25)));
  CHECK_THROWS_AS(fan_half_angle({FanFamily::MFan, 1, {}}), std::invalid_argument);
}

TEST_CASE("two multi-planks cover the disk at large radius but not at small") {
  const auto hi = sharpness_two_multiplanks(3, 0.95, 20000);
  CHECK(hi.covers_unit_disk);
  CHECK_FALSE(hi.witness);
  const auto lo = sharpness_two_multiplanks(3, 0.3, 20000);
  CHECK_FALSE(lo.covers_unit_disk);
  REQUIRE(lo.witness);
  const auto [A, B] = sharpness_pair(3, 0.3);
  CHECK_FALSE(covers_point(A, *lo.witness));
  CHECK_FALSE(covers_point(B, *lo.witness));
  CHECK(lo.witness->norm() <= 1.0 + 1e-12);
  CHECK_THROWS_AS(sharpness_pair(2, 0.5), std::invalid_argument);
}

TEST_CASE("unit disk samples are deterministic and inside") {
  const auto a = unit_disk_samples(1000, 3), b = unit_disk_samples(1000, 3);
  REQUIRE(a.size() == 1000);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i] == b[i]);
    CHECK(a[i].norm() <= 1.0 + 1e-12);
  }
  // the first tenth sits on the boundary circle
  for (std::size_t i = 0; i < 100; ++i) CHECK(a[i].norm() == doctest::Approx(1.0));
  CHECK(a[100].norm() < 1.0);
}

TEST_CASE("covering and pants inequality: equality anchor") {
  // two closed planks of half-width 1/4 cover the unit square; 1/4 + 1/4 = r_(1)
  const auto c = center(std::vector<Point>{pt(0.25, 0), pt(-0.25, 0)});
  CoveringInstance inst{Polytope::box(pt(0, 0), pt(1, 1)),
                        {MultiPlank(c.set, pt(0.25, 0.5), true), MultiPlank(c.set, pt(0.75, 0.5), true)},
                        1};
  const auto rep = verify_pants_inequality(inst);
  CHECK(rep.covering.coverage_fraction == 1.0);
  CHECK(rep.lhs == doctest::Approx(0.5));
  CHECK(rep.rhs == doctest::Approx(0.5));
  CHECK(rep.holds);
}

TEST_CASE("coverage gaps are reported") {
  const auto c = center(std::vector<Point>{pt(0.25, 0), pt(-0.25, 0)});
  CoveringInstance inst{Polytope::box(pt(0, 0), pt(1, 1)), {MultiPlank(c.set, pt(0.25, 0.5), true)}, 1};
  const auto cov = verify_covering(inst);
  CHECK(cov.coverage_fraction < 0.6);
  REQUIRE(cov.uncovered_witness);
  CHECK((*cov.uncovered_witness)(0) > 0.5);
  CHECK_THROWS_AS(verify_pants_inequality(inst), CoverageNotEstablished);
}

TEST_CASE("subadditivity over chord partitions") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 10; ++trial) {
    const Polytope K = trial % 2 ? Polytope::polygon(oracle::random_polygon(rng, 7)) : Polytope::box(pt(0, 0), pt(1, 1));
    const auto pieces = split(K, rng, 1 + trial % 3);
    for (int k : {1, 2}) {
      CoveringInstance inst{K, {}, k, 5000};
      for (const auto& p : pieces) inst.covers.emplace_back(p);
      const auto rep = verify_pants_inequality(inst);
      CHECK(rep.holds);
      CHECK(rep.lhs >= rep.rhs - 1e-6);
    }
  }
}

}  // TEST_SUITE
