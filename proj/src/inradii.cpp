#include "mplank/inradii.hpp"

#include "mplank/lp.hpp"
#include "mplank/optimize.hpp"
#include "mplank/sampling.hpp"
#include "mplank/stratify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace mplank {

namespace {

constexpr int kAngleGrid = 720;
constexpr std::size_t kSphereGrid = 1000;

void check_body(const Polytope& K, int k) {
  if (!K.full_dimensional()) throw std::invalid_argument("intrinsic inradius: body must be full-dimensional");
  if (k < 1 || k > K.dim()) throw std::invalid_argument("intrinsic inradius: need 1 <= k <= n");
}

Eigen::MatrixXd subspace_from_direction(const Point& u, int k) {
  if (k == 1) return u.normalized();
  return orthogonal_complement(u.normalized());
}

}  // namespace

Eigen::MatrixXd line_basis_2d(double theta) {
  Eigen::MatrixXd b(2, 1);
  b << std::cos(theta), std::sin(theta);
  return b;
}

double projection_inradius(const Polytope& K, const Eigen::MatrixXd& basis, const Tolerance& tol) {
  const auto k = basis.cols();
  if (k == 1) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& v : K.vertices()) {
      const double s = basis.col(0).dot(v);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    return 0.5 * (hi - lo);
  }
  if (k == K.dim()) return chebyshev_ball(K, tol).radius;
  std::vector<Point> projected;
  projected.reserve(K.vertices().size());
  for (const auto& v : K.vertices()) projected.push_back(basis.transpose() * v);
  const Polytope shadow = Polytope::from_vertices(projected, tol);
  return chebyshev_ball(shadow, tol).radius;
}

double section_inradius(const Polytope& K, const Eigen::MatrixXd& basis, const Tolerance&) {
  const int n = K.dim();
  const auto& hs = K.halfspaces();
  const auto m = static_cast<Eigen::Index>(hs.size());
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m + 1, n + 1);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(m + 1);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& h = hs[static_cast<std::size_t>(i)];
    A.row(i).head(n) = h.normal.transpose();
    A(i, n) = (basis.transpose() * h.normal).norm();
    b(i) = h.offset;
  }
  A(m, n) = -1.0;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n + 1);
  c(n) = 1.0;
  const LpResult r = solve_lp(A, b, c);
  if (r.status != LpStatus::Optimal) throw std::invalid_argument("section_inradius: body is unbounded or empty");
  return r.x(n);
}

IntrinsicRadius minimize_over_subspaces(int n, int k,
                                        const std::function<double(const Eigen::MatrixXd&)>& objective) {
  IntrinsicRadius out;
  out.argmin.k = k;
  if (k == n) {
    out.argmin.basis = Eigen::MatrixXd::Identity(n, n);
    out.value = objective(out.argmin.basis);
    return out;
  }
  if (n == 2) {
    std::vector<double> grid(kAngleGrid);
    const double step = M_PI / kAngleGrid;
    for (int i = 0; i < kAngleGrid; ++i) grid[static_cast<std::size_t>(i)] = objective(line_basis_2d(i * step));
    // Local minima of the cyclic grid, best first.
    std::vector<int> minima;
    for (int i = 0; i < kAngleGrid; ++i) {
      const double v = grid[static_cast<std::size_t>(i)];
      if (v <= grid[static_cast<std::size_t>((i + 1) % kAngleGrid)] &&
          v <= grid[static_cast<std::size_t>((i + kAngleGrid - 1) % kAngleGrid)])
        minima.push_back(i);
    }
    std::stable_sort(minima.begin(), minima.end(), [&](int a, int b) {
      return grid[static_cast<std::size_t>(a)] < grid[static_cast<std::size_t>(b)];
    });
    if (minima.size() > 4) minima.resize(4);
    const int best_grid = minima.front();
    out.value = grid[static_cast<std::size_t>(best_grid)];
    double best_theta = best_grid * step;
    for (int i : minima) {
      const auto m = golden_section_min([&](double t) { return objective(line_basis_2d(t)); }, (i - 1) * step,
                                        (i + 1) * step, 1e-12);
      if (m.value < out.value) {
        out.value = m.value;
        best_theta = m.x;
        out.argmin.refined = true;
      }
    }
    out.argmin.basis = line_basis_2d(best_theta);
    return out;
  }
  if (n != 3) throw std::invalid_argument("subspace search: dimension must be 2 or 3");

  const std::vector<Point> dirs = fibonacci_hemisphere(kSphereGrid);
  std::vector<double> grid(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) grid[i] = objective(subspace_from_direction(dirs[i], k));
  std::vector<std::size_t> order(dirs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return grid[a] < grid[b]; });
  out.value = grid[order.front()];
  Point best_dir = dirs[order.front()];
  const double spacing = std::sqrt(2.0 * M_PI / static_cast<double>(kSphereGrid));
  for (std::size_t t = 0; t < 6 && t < order.size(); ++t) {
    const Point u0 = dirs[order[t]];
    const Eigen::MatrixXd tangent = orthogonal_complement(u0);
    auto at = [&](const Eigen::VectorXd& ab) -> Point { return (u0 + tangent * ab).normalized(); };
    const auto m = nelder_mead_min([&](const Eigen::VectorXd& ab) { return objective(subspace_from_direction(at(ab), k)); },
                                   Eigen::VectorXd::Zero(2), spacing, 1e-10, 3000);
    if (m.value < out.value) {
      out.value = m.value;
      best_dir = at(m.x);
      out.argmin.refined = true;
    }
  }
  out.argmin.basis = subspace_from_direction(best_dir, k);
  return out;
}

IntrinsicRadius upper_intrinsic(const Polytope& K, int k, const Tolerance& tol) {
  check_body(K, k);
  return minimize_over_subspaces(K.dim(), k, [&](const Eigen::MatrixXd& L) { return projection_inradius(K, L, tol); });
}

IntrinsicRadius lower_intrinsic(const Polytope& K, int k, const Tolerance& tol) {
  check_body(K, k);
  return minimize_over_subspaces(K.dim(), k, [&](const Eigen::MatrixXd& L) { return section_inradius(K, L, tol); });
}

IntrinsicRadii intrinsic_radii(const Polytope& K, int k, const Tolerance& tol) {
  return {upper_intrinsic(K, k, tol), lower_intrinsic(K, k, tol)};
}

// ---------------------------------------------------------------------------
// Inscribed balls of multi-planks

double clearance(const MultiPlank& P, const Point& x) {
  if (contains(P, x) != Membership::Inside) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& cell : P.complement_cells())
    if (const auto d = distance_to_polyhedron(x, cell, P.tolerance())) best = std::min(best, *d);
  return best;
}

bool sphere_inside(const MultiPlank& P, const Point& center, double radius, std::size_t samples) {
  for (const auto& p : sample_sphere(center, radius, samples))
    if (contains(P, p) != Membership::Inside) return false;
  return true;
}

Ball multiplank_inscribed_radius(const MultiPlank& P, const Tolerance& tol) {
  const int n = P.dim();
  if (n != 2 && n != 3) throw std::invalid_argument("multiplank_inscribed_radius: dimension must be 2 or 3");
  const double r = inradius(P);
  const Point& t = P.translation();
  const auto& V = P.generators().points();

  std::vector<Point> seeds;
  if (n == 2 && P.rank() == 2) {
    const Stratification strat = Stratification::build(P.generators(), tol);
    for (const auto& S : strat.simplices()) {
      Point centroid = Point::Zero(2);
      for (std::size_t a = 0; a < 3; ++a) {
        centroid += S.vertices[a] / 3.0;
        seeds.push_back(t + S.vertices[a]);
        seeds.push_back(t + 0.5 * (S.vertices[a] + S.vertices[(a + 1) % 3]));
      }
      seeds.push_back(t + centroid);
    }
  }
  for (const auto& v : V) seeds.push_back(t + 0.5 * v);
  std::mt19937_64 rng(42);
  for (int i = 0; i < 24; ++i) seeds.push_back(t + random_in_ball(rng, n, 1.5 * r));

  Ball best{t, 0.0};
  for (const auto& s : seeds) {
    if (clearance(P, s) <= 0.0) continue;
    const auto m = nelder_mead_min([&](const Eigen::VectorXd& x) { return -clearance(P, x); }, s, 0.1 * r,
                                   1e-9 * std::max(1.0, r), 2000);
    if (-m.value > best.radius) best = {m.x, -m.value};
  }
  return best;
}

}  // namespace mplank
