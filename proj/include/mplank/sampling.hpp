#pragma once

// Deterministic sampling helpers: Halton sequences, samplers for bodies and
// spheres, and a chunked parallel loop honoring MULTIPLANK_THREADS.

#include "mplank/geom.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace mplank {

/// Radical inverse of `index` in `base`.
double radical_inverse(std::uint64_t index, int base);

/// Halton point in [0,1)^dim; the sequence is offset by `seed` so different
/// seeds give different (still low-discrepancy) streams.
Point halton(std::uint64_t index, int dim, std::uint64_t seed = 0);

/// `count` low-discrepancy samples of a full-dimensional polytope (bounding
/// box Halton stream with rejection).
std::vector<Point> sample_polytope(const Polytope& body, std::size_t count, std::uint64_t seed = 0);

/// Halton samples of the box [lo, hi].
std::vector<Point> sample_box(const Point& lo, const Point& hi, std::size_t count, std::uint64_t seed = 0);

/// `count` points on the sphere of `radius` around `center`. In 2D the points
/// are equiangular; in 3D a Fibonacci lattice.
std::vector<Point> sample_sphere(const Point& center, double radius, std::size_t count);

/// Fibonacci lattice of unit vectors in R^3 restricted to the upper hemisphere
/// (antipodal directions describe the same line or plane).
std::vector<Point> fibonacci_hemisphere(std::size_t count);

/// Uniform point in the ball of `radius` around the origin of R^dim.
Point random_in_ball(std::mt19937_64& rng, int dim, double radius);
Point random_unit(std::mt19937_64& rng, int dim);

/// Worker count: MULTIPLANK_THREADS when set and positive, otherwise the
/// hardware concurrency.
unsigned worker_count();

/// Runs body(i) for i in [0, n) across worker_count() threads. Each index is
/// visited exactly once; callers write results by index so reductions stay
/// deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace mplank
