#include "mplank/normed.hpp"

#include "mplank/inradii.hpp"
#include "mplank/lp.hpp"
#include "mplank/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mplank {

namespace {

void check_planar(const Point& x) {
  if (x.size() != 2) throw std::invalid_argument("gauge: points must be 2D");
}

double width(const Polytope& K, const Point& nu) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& v : K.vertices()) {
    lo = std::min(lo, nu.dot(v));
    hi = std::max(hi, nu.dot(v));
  }
  return hi - lo;
}

void check_body(const Polytope& K, int k) {
  if (K.dim() != 2) throw std::invalid_argument("normed intrinsic inradius: body must be 2D");
  if (!K.full_dimensional()) throw std::invalid_argument("normed intrinsic inradius: body must be full-dimensional");
  if (k != 1 && k != 2) throw std::invalid_argument("normed intrinsic inradius: k must be 1 or 2");
}

// Largest r with t + rB inside K.
double homothet_inradius(const Polytope& K, const Gauge& B) {
  const auto& hs = K.halfspaces();
  const auto m = static_cast<Eigen::Index>(hs.size());
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m + 1, 3);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(m + 1);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& h = hs[static_cast<std::size_t>(i)];
    A.row(i).head(2) = h.normal.transpose();
    A(i, 2) = B.support(h.normal);
    b(i) = h.offset;
  }
  A(m, 2) = -1.0;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(3);
  c(2) = 1.0;
  const LpResult r = solve_lp(A, b, c);
  if (r.status != LpStatus::Optimal) throw std::invalid_argument("normed intrinsic inradius: body is unbounded or empty");
  return r.x(2);
}

}  // namespace

Gauge::Gauge(std::span<const Point> polygon, const Tolerance& tol) {
  for (const auto& p : polygon) {
    check_planar(p);
    if (!p.allFinite()) throw std::invalid_argument("gauge: non-finite vertex");
  }
  vertices_ = convex_hull_2d(polygon, tol);
  if (vertices_.size() < 3) throw std::invalid_argument("gauge: polygon must be 2-dimensional");
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const Point& p = vertices_[i];
    const Point& q = vertices_[(i + 1) % vertices_.size()];
    const Point n = make_point({q(1) - p(1), p(0) - q(0)});
    const double off = n.dot(p);
    if (off <= tol.eps_geom * n.norm()) throw std::invalid_argument("gauge: origin must lie strictly inside");
    functionals_.push_back(n / off);
  }
}

Gauge Gauge::regular(int sides, double phase) {
  if (sides < 3) throw std::invalid_argument("gauge: need at least 3 sides");
  std::vector<Point> pts;
  for (int i = 0; i < sides; ++i) {
    const double a = phase + 2.0 * M_PI * i / sides;
    pts.push_back(make_point({std::cos(a), std::sin(a)}));
  }
  return Gauge(pts);
}

double Gauge::norm(const Point& x) const {
  double best = 0.0;
  for (const auto& a : functionals_) best = std::max(best, a.dot(x));
  return best;
}

double Gauge::support(const Point& u) const {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : vertices_) best = std::max(best, u.dot(v));
  return best;
}

double gauge_norm(const Gauge& B, const Point& x) {
  check_planar(x);
  return B.norm(x);
}

CenteringCertificate normed_centering_check(std::span<const Point> V, const Gauge& B, const Tolerance& tol) {
  if (V.empty()) throw std::invalid_argument("normed_centering_check: empty set");
  CenteringCertificate out;
  for (const auto& v : V) {
    check_planar(v);
    out.r = std::max(out.r, B.norm(v));
  }
  // Variables (t, rho): <a_e, v> - <a_e, t> - rho <= 0 for every e, v.
  const auto& F = B.functionals();
  const auto rows = static_cast<Eigen::Index>(F.size() * V.size());
  Eigen::MatrixXd A(rows, 3);
  Eigen::VectorXd b(rows);
  Eigen::Index row = 0;
  for (const auto& v : V)
    for (const auto& a : F) {
      A(row, 0) = -a(0);
      A(row, 1) = -a(1);
      A(row, 2) = -1.0;
      b(row) = -a.dot(v);
      ++row;
    }
  Eigen::VectorXd c = Eigen::VectorXd::Zero(3);
  c(2) = -1.0;
  const LpResult res = solve_lp(A, b, c);
  if (res.status != LpStatus::Optimal) throw std::logic_error("normed_centering_check: LP failed");
  out.rho = std::max(0.0, res.x(2));
  out.translation = res.x.head(2);
  out.centered = out.rho >= out.r - tol.eps_opt;
  return out;
}

std::vector<Point> normed_center(std::span<const Point> V, const Gauge& B, const Tolerance& tol) {
  const auto cert = normed_centering_check(V, B, tol);
  std::vector<Point> out;
  for (const auto& v : V) out.push_back(v - cert.translation);
  return out;
}

NormedMultiPlank::NormedMultiPlank(std::vector<Point> V, Gauge B, const Tolerance& tol)
    : gauge_(std::move(B)), tol_(tol) {
  tol.validate();
  for (auto& v : V) {
    check_planar(v);
    if (!v.allFinite()) throw std::invalid_argument("normed multi-plank: non-finite generator");
    const bool dup = std::any_of(points_.begin(), points_.end(),
                                 [&](const Point& p) { return (p - v).norm() <= tol.eps_geom * std::max(1.0, v.norm()); });
    if (!dup) points_.push_back(std::move(v));
  }
  if (points_.size() < 2) throw std::invalid_argument("normed multi-plank: need at least 2 distinct generators");
  const auto cert = normed_centering_check(points_, gauge_, tol);
  if (!cert.centered) throw std::invalid_argument("normed multi-plank: generating set is not centered");
  r_ = cert.r;
  rank_ = affine_rank(points_, tol);
}

double normed_margin(const NormedMultiPlank& P, const Point& x) {
  check_planar(x);
  const auto& V = P.generators();
  const Gauge& B = P.gauge();
  const double base = B.norm(x);
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < V.size(); ++j) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t jp = 0; jp < V.size(); ++jp)
      if (jp != j) best = std::max(best, B.norm(x - V[j] + V[jp]) - base);
    worst = std::min(worst, best);
  }
  return worst;
}

Membership normed_contains(const NormedMultiPlank& P, const Point& x) {
  const double m = normed_margin(P, x);
  const double band = P.tolerance().eps_geom * std::max(1.0, P.radius());
  if (m > band) return Membership::Inside;
  if (m < -band) return Membership::Outside;
  return Membership::Boundary;
}

double normed_lower_intrinsic(const Polytope& K, int k, const Gauge& B, const Tolerance& tol) {
  check_body(K, k);
  if (k == 2) return homothet_inradius(K, B);
  return minimize_over_subspaces(2, 1, [&](const Eigen::MatrixXd& L) {
           const Point u = L.col(0);
           const double chord = 1.0 / B.norm(u) + 1.0 / B.norm(-u);
           return 2.0 * section_inradius(K, L, tol) / chord;
         }).value;
}

double normed_upper_intrinsic(const Polytope& K, int k, const Gauge& B, const Tolerance& tol) {
  check_body(K, k);
  if (k == 2) return homothet_inradius(K, B);
  (void)tol;
  return minimize_over_subspaces(2, 1, [&](const Eigen::MatrixXd& L) {
           const Point nu = L.col(0);
           return width(K, nu) / (B.support(nu) + B.support(-nu));
         }).value;
}

NormedEscapeReport normed_farthest_escape_check(std::span<const NormedMultiPlank> planks, const Point& s,
                                                const Tolerance& tol) {
  if (planks.empty()) throw std::invalid_argument("normed_farthest_escape_check: no planks");
  check_planar(s);
  const Gauge& B = planks.front().gauge();
  std::vector<std::vector<Point>> sets;
  for (const auto& P : planks) {
    if (P.gauge().vertices() != B.vertices())
      throw std::invalid_argument("normed_farthest_escape_check: planks must share one gauge");
    sets.push_back(P.generators());
  }
  const BangSet X = bang_set(sets);
  NormedEscapeReport rep;
  rep.bang_size = X.points.size();
  for (const auto& x : X.points) rep.max_norm = std::max(rep.max_norm, B.norm(x - s));
  const double eps = tol.eps_geom * std::max(1.0, rep.max_norm);
  for (const auto& x : X.points)
    if (B.norm(x - s) >= rep.max_norm - eps) rep.maximizers.push_back(x - s);
  for (const auto& x : rep.maximizers) {
    std::vector<Membership> verdicts;
    std::vector<double> margins;
    for (const auto& P : planks) {
      verdicts.push_back(normed_contains(P, x));
      margins.push_back(normed_margin(P, x));
      if (verdicts.back() == Membership::Inside) rep.holds = false;
    }
    rep.verdicts.push_back(std::move(verdicts));
    rep.margins.push_back(std::move(margins));
  }
  return rep;
}

NormedPantsReport verify_normed_pants(const Polytope& K, std::span<const NormedMultiPlank> planks, int k,
                                      std::size_t budget, std::uint64_t seed, const Tolerance& tol) {
  if (planks.empty()) throw std::invalid_argument("verify_normed_pants: no planks");
  const Gauge& B = planks.front().gauge();
  NormedPantsReport rep;
  const std::vector<Point> samples = sample_polytope(K, budget, seed);
  std::vector<char> covered(samples.size(), 0);
  parallel_for(samples.size(), [&](std::size_t i) {
    for (const auto& P : planks)
      if (normed_contains(P, samples[i]) == Membership::Inside) {
        covered[i] = 1;
        break;
      }
  });
  std::size_t hits = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (covered[i]) {
      ++hits;
    } else if (!rep.covering.uncovered_witness) {
      rep.covering.uncovered_witness = samples[i];
    }
  }
  rep.covering.samples = samples.size();
  rep.covering.coverage_fraction = samples.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(samples.size());
  if (rep.covering.uncovered_witness)
    throw CoverageNotEstablished("verify_normed_pants: covering not established at the sampling budget");
  for (const auto& P : planks) {
    if (P.rank() > k) throw std::invalid_argument("verify_normed_pants: multi-plank rank exceeds k");
    rep.lhs += P.radius();
  }
  rep.rhs = normed_lower_intrinsic(K, k, B, tol);
  rep.holds = rep.lhs >= rep.rhs - tol.eps_opt;
  return rep;
}

}  // namespace mplank
