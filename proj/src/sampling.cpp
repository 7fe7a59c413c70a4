#include "mplank/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace mplank {

namespace {
constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13};
}

double radical_inverse(std::uint64_t index, int base) {
  double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (index > 0) {
    r += f * static_cast<double>(index % static_cast<std::uint64_t>(base));
    index /= static_cast<std::uint64_t>(base);
    f *= inv;
  }
  return r;
}

Point halton(std::uint64_t index, int dim, std::uint64_t seed) {
  Point p(dim);
  // Skip the first (degenerate) terms and shift by the seed.
  const std::uint64_t i = index + 20 + seed * 7919;
  for (int d = 0; d < dim; ++d) p(d) = radical_inverse(i, kPrimes[d]);
  return p;
}

std::vector<Point> sample_box(const Point& lo, const Point& hi, std::size_t count, std::uint64_t seed) {
  std::vector<Point> out;
  out.reserve(count);
  const int dim = static_cast<int>(lo.size());
  for (std::size_t i = 0; i < count; ++i) out.push_back(lo + (hi - lo).cwiseProduct(halton(i, dim, seed)));
  return out;
}

std::vector<Point> sample_polytope(const Polytope& body, std::size_t count, std::uint64_t seed) {
  std::vector<Point> out;
  out.reserve(count);
  const Point lo = body.lower_corner();
  const Point hi = body.upper_corner();
  const int dim = body.dim();
  for (std::uint64_t i = 0; out.size() < count; ++i) {
    Point p = lo + (hi - lo).cwiseProduct(halton(i, dim, seed));
    if (body.contains(p, 0.0)) out.push_back(std::move(p));
    if (i > 1000 * count + 100000) break;
  }
  return out;
}

std::vector<Point> sample_sphere(const Point& center, double radius, std::size_t count) {
  std::vector<Point> out;
  out.reserve(count);
  const auto dim = center.size();
  if (dim == 2) {
    for (std::size_t i = 0; i < count; ++i) {
      const double a = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(count);
      out.push_back(center + radius * make_point({std::cos(a), std::sin(a)}));
    }
  } else if (dim == 3) {
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    for (std::size_t i = 0; i < count; ++i) {
      const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(count);
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double a = golden * static_cast<double>(i);
      out.push_back(center + radius * make_point({rho * std::cos(a), rho * std::sin(a), z}));
    }
  } else {
    throw std::invalid_argument("sample_sphere: dimension must be 2 or 3");
  }
  return out;
}

std::vector<Point> fibonacci_hemisphere(std::size_t count) {
  std::vector<Point> out;
  out.reserve(count);
  const double golden = M_PI * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < count; ++i) {
    const double z = 1.0 - (static_cast<double>(i) + 0.5) / static_cast<double>(count);
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double a = golden * static_cast<double>(i);
    out.push_back(make_point({rho * std::cos(a), rho * std::sin(a), z}));
  }
  return out;
}

Point random_unit(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> g(0.0, 1.0);
  Point p(dim);
  do {
    for (int d = 0; d < dim; ++d) p(d) = g(rng);
  } while (p.norm() < 1e-12);
  return p.normalized();
}

Point random_in_ball(std::mt19937_64& rng, int dim, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return random_unit(rng, dim) * radius * std::pow(u(rng), 1.0 / dim);
}

unsigned worker_count() {
  if (const char* env = std::getenv("MULTIPLANK_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&body, begin, end] {
      for (std::size_t i = begin; i < end; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace mplank
