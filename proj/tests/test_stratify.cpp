#include "doctest.h"
#include "oracles.hpp"

#include "mplank/stratify.hpp"

#include <algorithm>
#include <random>

using namespace mplank;
using oracle::pt;

TEST_SUITE("stratify") {

TEST_CASE("anti-delaunay cells tile the hull and satisfy the full sphere property") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const auto V = oracle::random_points(rng, 2, 3 + trial % 8);
    const auto fd = farthest_delaunay_2d(V);
    const auto H = oracle::hull_2d(V);
    CHECK(fd.hull.size() == H.size());
    CHECK(fd.cells.size() == H.size() - 2);
    double total = 0;
    for (const auto& t : fd.cells) {
      const std::vector<Point> tri = {V[t[0]], V[t[1]], V[t[2]]};
      const double a = oracle::area(tri);
      CHECK(a > 0);  // counterclockwise
      total += a;
      // independent circumcircle: smallest circle through the three corners
      const Point u = tri[1] - tri[0], w = tri[2] - tri[0];
      const double d = 2 * (u(0) * w(1) - u(1) * w(0));
      const Point c = tri[0] + pt((w(1) * u.squaredNorm() - u(1) * w.squaredNorm()) / d,
                                  (u(0) * w.squaredNorm() - w(0) * u.squaredNorm()) / d);
      const double R = (tri[0] - c).norm();
      for (const auto& p : V) CHECK((p - c).norm() <= R * (1 + 1e-9));
    }
    CHECK(total == doctest::Approx(oracle::area(H)).epsilon(1e-9));
    CHECK(full_sphere_property(fd, V));
    CHECK_NOTHROW(centered_simplices(fd, V));
  }
}

TEST_CASE("cocircular points are triangulated deterministically") {
  const std::vector<Point> sq = {pt(1, 1), pt(-1, 1), pt(-1, -1), pt(1, -1)};
  const auto a = farthest_delaunay_2d(sq);
  const auto b = farthest_delaunay_2d(sq);
  CHECK(a.cells.size() == 2);
  CHECK(a.cells == b.cells);
  // both cells share the circumcenter, so the centered simplices touch along the diagonal
  const auto S = centered_simplices(a, sq);
  CHECK(S.size() == 2);
  CHECK(S[0].circumradius == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("rank deficient input is rejected") {
  CHECK_THROWS_AS(farthest_delaunay_2d(std::vector<Point>{pt(0, 0), pt(1, 1), pt(2, 2)}), std::invalid_argument);
  CHECK_THROWS_AS(farthest_delaunay_2d(std::vector<Point>{pt(0, 0, 0), pt(1, 0, 0), pt(0, 1, 0)}),
                  std::invalid_argument);
}

TEST_CASE("strata classify every point once and reproduce membership") {
  std::mt19937_64 rng(43);
  std::normal_distribution<double> g(0, 1.5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto V = oracle::random_centered_2d(rng, 3 + trial % 5);
    const auto P = MultiPlank::centered(V);
    const auto st = Stratification::build(P.generators());
    CHECK(st.rank() == 2);
    std::vector<StratumId> ids;
    for (const auto& s : st.strata()) ids.push_back(s.id);
    CHECK(std::adjacent_find(ids.begin(), ids.end()) == ids.end());
    for (int k = 0; k < 500; ++k) {
      const Point x = pt(g(rng), g(rng));
      const StratumId id = st.classify(x);
      CHECK(std::count(ids.begin(), ids.end(), id) == 1);
      const Membership a = contains(P, x), b = contains_via_strata(st, P, x);
      if (a != Membership::Boundary && b != Membership::Boundary) CHECK(a == b);
      if (a == Membership::Outside) CHECK(id.dim == 0);
      if (a == Membership::Inside) CHECK(id.dim > 0);
    }
  }
}

TEST_CASE("vertex strata gap changes sign on the boundary") {
  const auto P = MultiPlank::centered({pt(0, 1), pt(0, -1)});
  const auto st = Stratification::build(P.generators());
  CHECK(st.rank() == 1);
  CHECK(st.vertex_strata_gap(pt(4, 0.2)) > 0);
  CHECK(st.vertex_strata_gap(pt(4, 1.5)) < 0);
  CHECK(std::abs(st.vertex_strata_gap(pt(-2, 1.0))) < 1e-12);
  CHECK(contains_via_strata(st, P, pt(-2, 1.0)) == Membership::Boundary);
  CHECK(st.classify(pt(0, 0.3)).dim == 1);
  CHECK(st.classify(pt(0, 3)).dim == 0);
}

TEST_CASE("strata of an equilateral triangle") {
  std::vector<Point> V;
  for (int j = 0; j < 3; ++j) V.push_back(pt(std::cos(2 * M_PI * j / 3), std::sin(2 * M_PI * j / 3)));
  const auto P = MultiPlank::centered(V);
  const auto st = Stratification::build(P.generators());
  int counts[3] = {0, 0, 0};
  for (const auto& s : st.strata()) ++counts[s.id.dim];
  CHECK(counts[0] == 3);
  CHECK(counts[1] == 3);
  CHECK(counts[2] == 1);
  CHECK(st.classify(pt(0, 0)).dim == 2);
  // far along a sector bisector between two generators lies in an edge stratum
  CHECK(st.classify(pt(-5, 0.0)).dim == 1);
  CHECK(st.classify(10 * V[0]).dim == 0);
}

TEST_CASE("mismatched stratification is rejected") {
  const auto P = MultiPlank::centered({pt(0, 1), pt(0, -1)});
  std::vector<Point> V = {pt(1, 0), pt(-0.5, 0.8660254037844386), pt(-0.5, -0.8660254037844386)};
  const auto st = Stratification::build(GeneratingSet(V));
  CHECK_THROWS_AS(contains_via_strata(st, P, pt(0, 0)), std::invalid_argument);
}

}  // TEST_SUITE
