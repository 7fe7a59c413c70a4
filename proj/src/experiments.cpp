#include "mplank/experiments.hpp"

#include "mplank/optimize.hpp"
#include "mplank/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace mplank {

BangSet bang_set(std::span<const std::vector<Point>> sets, std::size_t cap) {
  if (sets.empty()) throw std::invalid_argument("bang_set: no generating sets");
  std::size_t size = 1;
  for (const auto& V : sets) {
    if (V.empty()) throw std::invalid_argument("bang_set: empty generating set");
    if (size > cap / V.size()) throw std::length_error("bang_set: size cap exceeded");
    size *= V.size();
  }
  if (size > cap) throw std::length_error("bang_set: size cap exceeded");
  const auto dim = sets.front().front().size();
  BangSet X;
  X.summands.assign(sets.begin(), sets.end());
  X.points.reserve(size);
  X.points.push_back(Point::Zero(dim));
  for (const auto& V : sets) {
    std::vector<Point> next;
    next.reserve(X.points.size() * V.size());
    for (const auto& partial : X.points)
      for (const auto& v : V) {
        if (v.size() != dim) throw std::invalid_argument("bang_set: mixed dimensions");
        next.push_back(partial + v);
      }
    X.points = std::move(next);
  }
  return X;
}

EscapeReport farthest_escape_check(std::span<const MultiPlank> planks, const Point& s, const Tolerance& tol) {
  if (planks.empty()) throw std::invalid_argument("farthest_escape_check: no planks");
  std::vector<std::vector<Point>> sets;
  for (const auto& P : planks) {
    if (P.translation().norm() != 0.0) throw std::invalid_argument("farthest_escape_check: planks must be centered");
    if (P.dim() != s.size()) throw std::invalid_argument("farthest_escape_check: dimension mismatch");
    sets.push_back(P.generators().points());
  }
  const BangSet X = bang_set(sets);
  EscapeReport rep;
  rep.bang_size = X.points.size();
  for (const auto& x : X.points) rep.max_norm = std::max(rep.max_norm, (x - s).norm());
  const double eps = tol.eps_geom * std::max(1.0, rep.max_norm);
  for (const auto& x : X.points)
    if ((x - s).norm() >= rep.max_norm - eps) rep.maximizers.push_back(x - s);
  for (const auto& x : rep.maximizers) {
    std::vector<Membership> verdicts;
    std::vector<double> margins;
    for (const auto& P : planks) {
      verdicts.push_back(contains(P, x));
      margins.push_back(membership_margin(P, x));
      if (verdicts.back() == Membership::Inside) rep.holds = false;
    }
    rep.verdicts.push_back(std::move(verdicts));
    rep.margins.push_back(std::move(margins));
  }
  rep.witness = rep.maximizers.front();
  return rep;
}

bool cover_contains(const Cover& c, const Point& x, const Tolerance& tol) {
  if (const auto* P = std::get_if<MultiPlank>(&c)) return covers_point(*P, x);
  return std::get<Polytope>(c).contains(x, tol.eps_geom);
}

CoveringReport verify_covering(const CoveringInstance& inst, const Tolerance& tol) {
  const std::vector<Point> samples = sample_polytope(inst.K, inst.budget, inst.seed);
  std::vector<char> covered(samples.size(), 0);
  parallel_for(samples.size(), [&](std::size_t i) {
    for (const auto& c : inst.covers)
      if (cover_contains(c, samples[i], tol)) {
        covered[i] = 1;
        break;
      }
  });
  CoveringReport rep;
  rep.samples = samples.size();
  std::size_t hits = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (covered[i]) {
      ++hits;
    } else if (!rep.uncovered_witness) {
      rep.uncovered_witness = samples[i];
    }
  }
  rep.coverage_fraction = samples.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(samples.size());
  return rep;
}

PantsReport verify_pants_inequality(const CoveringInstance& inst, const Tolerance& tol) {
  PantsReport rep;
  rep.covering = verify_covering(inst, tol);
  if (rep.covering.uncovered_witness)
    throw CoverageNotEstablished("verify_pants_inequality: covering not established at the sampling budget");
  for (const auto& c : inst.covers) {
    if (const auto* P = std::get_if<MultiPlank>(&c)) {
      if (P->rank() > inst.k) throw std::invalid_argument("verify_pants_inequality: multi-plank rank exceeds k");
      rep.lhs += inradius(*P);
    } else {
      rep.lhs += upper_intrinsic(std::get<Polytope>(c), inst.k, tol).value;
    }
  }
  rep.rhs = lower_intrinsic(inst.K, inst.k, tol).value;
  rep.holds = rep.lhs >= rep.rhs - tol.eps_opt;
  return rep;
}

// ---------------------------------------------------------------------------
// Pizza cutters

double pizza_clearance(const Point& x, std::span<const Fan> fans) {
  double f = 1.0 - x.norm();
  for (const auto& fan : fans) f = std::min(f, dist_to_fan(x, fan));
  return f;
}

PizzaResult pizza_best_piece(std::span<const Fan> fans, std::size_t budget, double target_gap) {
  for (const auto& fan : fans)
    if (fan.m < 2 || fan.apex.size() != 2) throw std::invalid_argument("pizza_best_piece: invalid fan");
  struct Cell {
    double cx, cy, half, value, upper;
    bool operator<(const Cell& o) const { return upper < o.upper; }
  };
  PizzaResult res;
  res.radius = -std::numeric_limits<double>::infinity();
  auto eval = [&](double cx, double cy, double half) {
    const Point c = make_point({cx, cy});
    const double v = pizza_clearance(c, fans);
    ++res.evaluations;
    if (v > res.radius) {
      res.radius = v;
      res.center = c;
    }
    return Cell{cx, cy, half, v, v + half * std::sqrt(2.0)};
  };

  std::priority_queue<Cell> open;
  double dropped = -std::numeric_limits<double>::infinity();
  constexpr int kGrid = 32;
  const double h0 = 1.0 / kGrid;
  for (int i = 0; i < kGrid; ++i)
    for (int j = 0; j < kGrid; ++j) open.push(eval(-1.0 + (2 * i + 1) * h0, -1.0 + (2 * j + 1) * h0, h0));

  while (!open.empty()) {
    const Cell top = open.top();
    if (top.upper <= res.radius + target_gap || res.evaluations + 4 > budget) break;
    open.pop();
    const double q = 0.5 * top.half;
    for (const double dx : {-q, q})
      for (const double dy : {-q, q}) {
        const Cell child = eval(top.cx + dx, top.cy + dy, q);
        if (child.upper > res.radius + target_gap) {
          open.push(child);
        } else {
          dropped = std::max(dropped, child.upper);
        }
      }
  }

  const auto polish = nelder_mead_min([&](const Eigen::VectorXd& x) { return -pizza_clearance(x, fans); }, res.center,
                                      1e-3, 1e-13, 2000);
  if (-polish.value > res.radius) {
    res.radius = -polish.value;
    res.center = polish.x;
  }
  const double ceiling = std::max(open.empty() ? dropped : std::max(open.top().upper, dropped), res.radius);
  res.gap = ceiling - res.radius;
  return res;
}

double pizza_bound(int m, int N) {
  if (m < 2) throw std::invalid_argument("pizza_bound: m must be at least 2");
  if (N < 1) throw std::invalid_argument("pizza_bound: N must be at least 1");
  const double s = std::sin(M_PI / m);
  return s / (N + s);
}

MultiPlank fan_neighborhood_multiplank(const Fan& fan, double rbar, const Tolerance& tol) {
  if (fan.m < 2) throw std::invalid_argument("fan_neighborhood_multiplank: m must be at least 2");
  if (!(rbar > 0.0)) throw std::invalid_argument("fan_neighborhood_multiplank: rbar must be positive");
  const double len = rbar / std::sin(M_PI / fan.m);
  std::vector<Point> V;
  for (int j = 0; j < fan.m; ++j) {
    const double a = fan.rotation + M_PI / fan.m + 2.0 * M_PI * j / fan.m;
    V.push_back(len * make_point({std::cos(a), std::sin(a)}));
  }
  return MultiPlank(GeneratingSet(std::move(V), tol), fan.apex, false, tol);
}

std::vector<Point> circle_orbit(int m, double phase) {
  std::vector<Point> out;
  for (int j = 0; j < m; ++j) {
    const double a = phase + 2.0 * M_PI * j / m;
    out.push_back(make_point({std::cos(a), std::sin(a)}));
  }
  return out;
}

double orbit_half_angle(std::span<const Point> orbit) {
  if (orbit.size() < 2) throw std::invalid_argument("orbit_half_angle: need at least 2 orbit points");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < orbit.size(); ++i)
    for (std::size_t j = i + 1; j < orbit.size(); ++j) {
      const double c = orbit[i].normalized().dot(orbit[j].normalized());
      best = std::min(best, std::acos(std::clamp(c, -1.0, 1.0)));
    }
  return 0.5 * best;
}

double fan_half_angle(const FanFamilySpec& spec) {
  const int p = spec.param;
  switch (spec.family) {
    case FanFamily::MFan:
      if (p < 2) throw std::invalid_argument("fan_half_angle: m-fan needs m >= 2");
      return M_PI / p;
    case FanFamily::RegularSimplex:
      if (p < 2) throw std::invalid_argument("fan_half_angle: simplex fan needs n >= 2");
      return std::acos(1.0 / p);
    case FanFamily::CoxeterA:
      if (p < 2) throw std::invalid_argument("fan_half_angle: Coxeter A_n needs n >= 2");
      return std::acos(std::sqrt(3.0 / (2.0 * (p - 1) * p * (p + 1))));
    case FanFamily::Orbit:
      return orbit_half_angle(spec.orbit);
  }
  throw std::invalid_argument("fan_half_angle: unknown family");
}

// ---------------------------------------------------------------------------
// Two-multi-plank disk cover

std::vector<Point> unit_disk_samples(std::size_t count, std::uint64_t seed) {
  std::vector<Point> out;
  out.reserve(count);
  // a tenth on the boundary circle, where the last uncovered slivers live;
  // golden-ratio angles so the ring cannot alias with an N-fold symmetry
  const std::size_t ring = count / 10;
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  const double phase = radical_inverse(seed, 2);
  for (std::size_t i = 0; i < ring; ++i) {
    const double f = phase + golden * static_cast<double>(i);
    const double a = 2 * M_PI * (f - std::floor(f));
    out.push_back(make_point({std::cos(a), std::sin(a)}));
  }
  for (std::uint64_t i = 0; out.size() < count; ++i) {
    Point p = 2.0 * halton(i, 2, seed) - Point::Ones(2);
    if (p.squaredNorm() <= 1.0) out.push_back(std::move(p));
  }
  return out;
}

std::pair<MultiPlank, MultiPlank> sharpness_pair(int N, double r, const Tolerance& tol) {
  if (N < 3) throw std::invalid_argument("sharpness: N must be at least 3");
  if (!(r > 0.0)) throw std::invalid_argument("sharpness: r must be positive");
  auto ring = [&](double phase) {
    std::vector<Point> V;
    for (const auto& u : circle_orbit(N, phase)) V.push_back(r * u);
    return MultiPlank::centered(std::move(V), true, tol);
  };
  return {ring(0.0), ring(M_PI / N)};
}

namespace {

std::optional<Point> first_uncovered(const std::pair<MultiPlank, MultiPlank>& pair, std::span<const Point> samples) {
  std::vector<char> miss(samples.size(), 0);
  parallel_for(samples.size(), [&](std::size_t i) {
    miss[i] = !covers_point(pair.first, samples[i]) && !covers_point(pair.second, samples[i]);
  });
  for (std::size_t i = 0; i < samples.size(); ++i)
    if (miss[i]) return samples[i];
  return std::nullopt;
}

}  // namespace

double min_covering_radius(int N, std::size_t samples, double lo, double hi, double resolution, const Tolerance& tol) {
  const std::vector<Point> pts = unit_disk_samples(samples);
  if (first_uncovered(sharpness_pair(N, hi, tol), pts))
    throw std::runtime_error("min_covering_radius: upper bracket does not cover");
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    if (first_uncovered(sharpness_pair(N, mid, tol), pts)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

SharpnessReport sharpness_two_multiplanks(int N, double r, std::size_t samples, bool bisect, const Tolerance& tol) {
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("sharpness: r must lie in (0, 1)");
  SharpnessReport rep;
  rep.samples = samples;
  const std::vector<Point> pts = unit_disk_samples(samples);
  rep.witness = first_uncovered(sharpness_pair(N, r, tol), pts);
  rep.covers_unit_disk = !rep.witness;
  if (bisect) rep.min_covering_r = min_covering_radius(N, samples, 0.3, 1.0, 1e-4, tol);
  return rep;
}

}  // namespace mplank
