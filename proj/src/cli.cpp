#include "mplank/cli.hpp"

#include "mplank/experiments.hpp"
#include "mplank/inradii.hpp"
#include "mplank/multiplank.hpp"
#include "mplank/normed.hpp"
#include "mplank/render.hpp"
#include "mplank/sampling.hpp"
#include "mplank/stratify.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>

namespace mplank {

namespace {

Tolerance tol_of(const Scene& s, const CommandOptions& o) {
  Tolerance t = s.tolerance();
  if (o.eps_geom) t.eps_geom = *o.eps_geom;
  if (o.eps_opt) t.eps_opt = *o.eps_opt;
  t.validate();
  return t;
}

std::uint64_t seed_of(const Scene& s, const CommandOptions& o) { return o.seed.value_or(s.seed); }

Report start(const char* name, const Scene& s) {
  Report r;
  r.command = name;
  r.digest = scene_digest(s);
  return r;
}

std::string key(std::size_t i, const char* what) { return "set" + std::to_string(i) + "." + what; }

void need_sets(const Scene& s) {
  if (s.generating_sets.empty()) throw SchemaError("scene has no generating sets");
}

MultiPlank build_plank(const Scene& s, std::size_t i, bool closed, const Tolerance& tol) {
  const CenteredSet c = center(s.generating_sets[i], tol);
  return MultiPlank(c.set, s.translation(i), closed, tol);
}

std::vector<Point> shifts_for(const Scene& s, double reach, std::uint64_t seed) {
  if (!s.shifts.empty()) return s.shifts;
  std::vector<Point> out{Point::Zero(s.dim)};
  std::mt19937_64 rng(seed);
  for (int i = 0; i < 9; ++i) out.push_back(random_in_ball(rng, s.dim, reach));
  return out;
}

}  // namespace

Report cmd_meb(const Scene& s, const CommandOptions& o) {
  need_sets(s);
  const Tolerance tol = tol_of(s, o);
  Report r = start("meb", s);
  bool all = true;
  for (std::size_t i = 0; i < s.generating_sets.size(); ++i) {
    const auto& V = s.generating_sets[i];
    const Ball b = min_enclosing_ball(V, tol);
    r.metrics[key(i, "radius")] = b.radius;
    r.metrics[key(i, "rank")] = affine_rank(V, tol);
    r.witnesses[key(i, "center")] = b.center;
    for (const auto& v : V) all = all && b.contains(v, tol.eps_geom);
  }
  r.verdicts["encloses_all"] = all;
  return r;
}

Report cmd_inradii(const Scene& s, const CommandOptions& o) {
  if (!s.K) throw SchemaError("inradii needs bodies.K");
  const Tolerance tol = tol_of(s, o);
  const Polytope K = s.K->build(tol);
  if (o.k < 1 || o.k > K.dim()) throw SchemaError("--k must lie in [1, dim]");
  Report r = start("inradii", s);
  const auto up = upper_intrinsic(K, o.k, tol);
  const auto lo = lower_intrinsic(K, o.k, tol);
  r.metrics["upper"] = up.value;
  r.metrics["lower"] = lo.value;
  r.metrics["k"] = o.k;
  r.metrics["inradius"] = chebyshev_ball(K, tol).radius;
  r.witnesses["upper.subspace"] = up.argmin.basis.col(0);
  r.witnesses["lower.subspace"] = lo.argmin.basis.col(0);
  r.verdicts["upper_ge_lower"] = up.value >= lo.value - tol.eps_opt;
  return r;
}

Report cmd_plank_check(const Scene& s, const CommandOptions& o) {
  const Tolerance tol = tol_of(s, o);
  if (s.generating_sets.empty() && s.planks.empty()) throw SchemaError("plank-check needs generating sets or planks");
  Report r = start("plank-check", s);
  const std::size_t budget = o.budget.value_or(10'000);
  const std::uint64_t seed = seed_of(s, o);
  r.budget = budget;
  bool def_ok = true, strata_ok = true, ball_ok = true;
  bool any_strata = false;
  for (std::size_t i = 0; i < s.generating_sets.size(); ++i) {
    const MultiPlank P = build_plank(s, i, o.closed, tol);
    const double rad = P.generators().radius();
    const Point& t = P.translation();
    const std::vector<Point> pts =
        sample_box(t - Point::Constant(s.dim, 3.0 * rad), t + Point::Constant(s.dim, 3.0 * rad), budget, seed);
    std::optional<Stratification> strat;
    if (s.dim == 2) strat = Stratification::build(P.generators(), tol);
    std::vector<char> bad_def(pts.size(), 0), bad_strata(pts.size(), 0);
    parallel_for(pts.size(), [&](std::size_t n) {
      const Membership a = contains(P, pts[n]);
      const Membership b = contains_via_cells(P, pts[n]);
      bad_def[n] = a != Membership::Boundary && b != Membership::Boundary && a != b;
      if (strat) {
        const Membership c = contains_via_strata(*strat, P, pts[n]);
        bad_strata[n] = a != Membership::Boundary && c != Membership::Boundary && a != c;
      }
    });
    std::size_t nd = 0, ns = 0;
    for (std::size_t n = 0; n < pts.size(); ++n) {
      if (bad_def[n] && nd++ == 0) r.witnesses[key(i, "def_disagreement")] = pts[n];
      if (bad_strata[n] && ns++ == 0) r.witnesses[key(i, "strata_disagreement")] = pts[n];
    }
    r.metrics[key(i, "inradius")] = rad;
    r.metrics[key(i, "rank")] = P.rank();
    r.metrics[key(i, "def_disagreements")] = static_cast<double>(nd);
    def_ok = def_ok && nd == 0;
    if (strat) {
      any_strata = true;
      r.metrics[key(i, "strata_disagreements")] = static_cast<double>(ns);
      strata_ok = strata_ok && ns == 0;
    }
    const bool inside = sphere_inside(P, t, rad * (1.0 - 1e-6), 2000);
    ball_ok = ball_ok && inside;
  }
  if (!s.generating_sets.empty()) {
    r.verdicts["def_equivalence"] = def_ok;
    r.verdicts["inscribed_ball"] = ball_ok;
    if (any_strata) r.verdicts["strata_equivalence"] = strata_ok;
  }
  if (!s.planks.empty()) {
    const MultiPlank U = plank_union_multiplank(s.planks, tol);
    double reach = 0.0;
    for (const auto& u : s.planks) reach += u.norm();
    const auto pts = sample_box(Point::Constant(s.dim, -2.0 * reach), Point::Constant(s.dim, 2.0 * reach), budget, seed);
    std::size_t tested = 0, missed = 0;
    for (const auto& x : pts) {
      bool in_plank = false;
      for (const auto& u : s.planks) in_plank = in_plank || std::abs(x.dot(u)) < u.squaredNorm();
      if (!in_plank) continue;
      ++tested;
      if (contains(U, x) != Membership::Inside && missed++ == 0) r.witnesses["plank_union.uncovered"] = x;
    }
    r.metrics["plank_union.inradius"] = U.generators().radius();
    r.metrics["plank_union.samples"] = static_cast<double>(tested);
    r.verdicts["plank_union_covers"] = missed == 0;
  }
  return r;
}

Report cmd_stratify(const Scene& s, const CommandOptions& o) {
  need_sets(s);
  if (s.dim != 2) throw SchemaError("stratify needs a 2D scene");
  const Tolerance tol = tol_of(s, o);
  const std::size_t budget = o.budget.value_or(10'000);
  const std::uint64_t seed = seed_of(s, o);
  Report r = start("stratify", s);
  r.budget = budget;
  bool sphere_ok = true, disjoint_ok = true, eq_ok = true;
  for (std::size_t i = 0; i < s.generating_sets.size(); ++i) {
    const MultiPlank P = build_plank(s, i, o.closed, tol);
    const auto& V = P.generators().points();
    if (P.rank() == 2) {
      const FarthestDelaunay fd = farthest_delaunay_2d(V, tol);
      r.metrics[key(i, "cells")] = static_cast<double>(fd.cells.size());
      const bool sphere = full_sphere_property(fd, V, tol);
      sphere_ok = sphere_ok && sphere;
      try {
        centered_simplices(fd, V, tol);
      } catch (const std::logic_error&) {
        disjoint_ok = false;
      }
    }
    Stratification st;
    try {
      st = Stratification::build(P.generators(), tol);
    } catch (const std::logic_error&) {
      disjoint_ok = false;
      continue;
    }
    int counts[3] = {0, 0, 0};
    for (const auto& x : st.strata()) ++counts[x.id.dim];
    r.metrics[key(i, "strata.dim0")] = counts[0];
    r.metrics[key(i, "strata.dim1")] = counts[1];
    r.metrics[key(i, "strata.dim2")] = counts[2];
    const double rad = P.generators().radius();
    const Point& t = P.translation();
    const auto pts = sample_box(t - Point::Constant(2, 3.0 * rad), t + Point::Constant(2, 3.0 * rad), budget, seed);
    std::size_t bad = 0;
    for (const auto& x : pts) {
      const Membership a = contains(P, x), b = contains_via_strata(st, P, x);
      if (a != Membership::Boundary && b != Membership::Boundary && a != b && bad++ == 0)
        r.witnesses[key(i, "disagreement")] = x;
    }
    r.metrics[key(i, "disagreements")] = static_cast<double>(bad);
    eq_ok = eq_ok && bad == 0;
  }
  r.verdicts["full_sphere"] = sphere_ok;
  r.verdicts["simplices_disjoint"] = disjoint_ok;
  r.verdicts["strata_equivalence"] = eq_ok;
  return r;
}

Report cmd_verify(const Scene& s, const CommandOptions& o) {
  const Tolerance tol = tol_of(s, o);
  const std::uint64_t seed = seed_of(s, o);
  const std::size_t budget = o.budget.value_or(10'000);
  Report r = start("verify", s);
  r.budget = budget;
  if (s.generating_sets.empty() && !s.K) throw SchemaError("verify needs generating sets or bodies.K");

  if (!s.generating_sets.empty()) {
    std::vector<MultiPlank> centered;
    double reach = 0.0;
    for (const auto& V : s.generating_sets) {
      const CenteredSet c = center(V, tol);
      centered.emplace_back(c.set, Point::Zero(s.dim), false, tol);
      reach += c.set.radius();
    }
    bool ok = true;
    std::size_t maximizers = 0;
    const auto shifts = shifts_for(s, reach, seed);
    for (const auto& sh : shifts) {
      const EscapeReport e = farthest_escape_check(centered, sh, tol);
      maximizers += e.maximizers.size();
      if (!e.holds && ok) {
        ok = false;
        r.witnesses["escape.shift"] = sh;
        r.witnesses["escape.maximizer"] = e.witness;
      }
    }
    r.metrics["escape.shifts"] = static_cast<double>(shifts.size());
    r.metrics["escape.maximizers"] = static_cast<double>(maximizers);
    r.verdicts["escape_holds"] = ok;
  }

  if (s.K && (!s.generating_sets.empty() || !s.covers.empty())) {
    CoveringInstance inst{s.K->build(tol), {}, o.k, budget, seed};
    for (std::size_t i = 0; i < s.generating_sets.size(); ++i) inst.covers.emplace_back(build_plank(s, i, o.closed, tol));
    for (const auto& c : s.covers) inst.covers.emplace_back(c.build(tol));
    const CoveringReport cov = verify_covering(inst, tol);
    r.metrics["coverage_fraction"] = cov.coverage_fraction;
    if (cov.uncovered_witness) {
      r.witnesses["uncovered"] = *cov.uncovered_witness;
      r.labels["pants"] = "not evaluated: covering not established";
    } else {
      const PantsReport p = verify_pants_inequality(inst, tol);
      r.metrics["pants.lhs"] = p.lhs;
      r.metrics["pants.rhs"] = p.rhs;
      r.verdicts["pants_inequality"] = p.holds;
    }
  }
  return r;
}

Report cmd_pizza(const Scene& s, const CommandOptions& o) {
  if (s.dim != 2) throw SchemaError("pizza needs a 2D scene");
  Report r = start("pizza", s);
  const std::size_t budget = o.budget.value_or(100'000);
  r.budget = budget;
  for (const auto& f : s.fans)
    if (f.m != s.fans.front().m) throw SchemaError("pizza: all fans must have the same m");
  const PizzaResult res = pizza_best_piece(s.fans, budget);
  r.metrics["best_piece"] = res.radius;
  r.metrics["gap"] = res.gap;
  r.metrics["evaluations"] = static_cast<double>(res.evaluations);
  r.witnesses["center"] = res.center;
  const double eps = tol_of(s, o).eps_opt;
  if (!s.fans.empty()) {
    const double bound = pizza_bound(s.fans.front().m, static_cast<int>(s.fans.size()));
    r.metrics["bound"] = bound;
    r.verdicts["bound_holds"] = res.radius + res.gap >= bound - eps;
  }
  return r;
}

Report cmd_sharpness(const Scene& s, const CommandOptions& o) {
  const Tolerance tol = tol_of(s, o);
  Report r = start("sharpness", s);
  const std::size_t samples = o.budget.value_or(100'000);
  r.budget = samples;
  if (o.sharp_n < 3) throw SchemaError("--N must be at least 3");
  if (!(o.sharp_r > 0.0 && o.sharp_r < 1.0)) throw SchemaError("--r must lie in (0, 1)");
  const SharpnessReport rep = sharpness_two_multiplanks(o.sharp_n, o.sharp_r, samples, o.bisect, tol);
  r.metrics["N"] = o.sharp_n;
  r.metrics["r"] = o.sharp_r;
  if (rep.witness) r.witnesses["uncovered"] = *rep.witness;
  // two multi-planks of inradius r cover the unit disk only if 2r >= 1
  r.verdicts["consistent_with_lower_bound"] = !(rep.covers_unit_disk && 2.0 * o.sharp_r < 1.0 - tol.eps_opt);
  r.labels["covers_unit_disk"] = rep.covers_unit_disk ? "true" : "false";
  if (rep.min_covering_r) {
    r.metrics["min_covering_r"] = *rep.min_covering_r;
    r.verdicts["min_covering_r_at_least_half"] = *rep.min_covering_r >= 0.5 - tol.eps_opt;
  }
  return r;
}

Report cmd_normed(const Scene& s, const CommandOptions& o) {
  if (!s.gauge) throw SchemaError("normed needs a gauge");
  const Tolerance tol = tol_of(s, o);
  const std::uint64_t seed = seed_of(s, o);
  const std::size_t budget = o.budget.value_or(10'000);
  Report r = start("normed", s);
  r.budget = budget;
  const Gauge B(*s.gauge, tol);

  std::mt19937_64 rng(seed);
  bool tri = true;
  for (int i = 0; i < 1000; ++i) {
    const Point x = random_in_ball(rng, 2, 2.0), y = random_in_ball(rng, 2, 2.0);
    if (B.norm(x + y) > B.norm(x) + B.norm(y) + tol.eps_geom) tri = false;
  }
  r.verdicts["triangle_inequality"] = tri;

  std::vector<NormedMultiPlank> planks;
  double reach = 0.0;
  for (std::size_t i = 0; i < s.generating_sets.size(); ++i) {
    const auto cert = normed_centering_check(s.generating_sets[i], B, tol);
    if (!cert.centered) {
      r.witnesses[key(i, "smaller_homothet_center")] = cert.translation;
      throw SchemaError("generating set " + std::to_string(i) + " is not centered for the gauge");
    }
    planks.emplace_back(s.generating_sets[i], B, tol);
    r.metrics[key(i, "radius")] = planks.back().radius();
    r.metrics[key(i, "rank")] = planks.back().rank();
    reach += planks.back().radius();
  }
  if (!planks.empty()) {
    bool ok = true;
    const auto shifts = shifts_for(s, reach, seed);
    for (const auto& sh : shifts) {
      const auto e = normed_farthest_escape_check(planks, sh, tol);
      if (!e.holds && ok) {
        ok = false;
        r.witnesses["escape.shift"] = sh;
      }
    }
    r.verdicts["escape_holds"] = ok;
  }
  if (s.K) {
    const Polytope K = s.K->build(tol);
    if (o.k != 1 && o.k != 2) throw SchemaError("--k must be 1 or 2");
    const double lo = normed_lower_intrinsic(K, o.k, B, tol);
    const double up = normed_upper_intrinsic(K, o.k, B, tol);
    r.metrics["lower"] = lo;
    r.metrics["upper"] = up;
    r.verdicts["upper_ge_lower"] = up >= lo - tol.eps_opt;
    if (!planks.empty()) {
      try {
        const auto p = verify_normed_pants(K, planks, o.k, budget, seed, tol);
        r.metrics["pants.lhs"] = p.lhs;
        r.metrics["pants.rhs"] = p.rhs;
        r.metrics["coverage_fraction"] = p.covering.coverage_fraction;
        r.verdicts["pants_inequality"] = p.holds;
      } catch (const CoverageNotEstablished&) {
        r.labels["pants"] = "not evaluated: covering not established";
      }
    }
  }
  return r;
}

Report cmd_render(const Scene& s, const CommandOptions& o) {
  if (o.out.empty()) throw SchemaError("render needs --out");
  Report r = start("render", s);
  RenderOptions ro;
  ro.resolution = o.resolution;
  ro.strata = o.strata;
  ro.closed = o.closed;
  Scene scene = s;
  if (o.eps_geom) scene.eps_geom = o.eps_geom;
  if (o.eps_opt) scene.eps_opt = o.eps_opt;
  const std::string svg = render_svg(scene, ro);
  std::ofstream f(o.out, std::ios::binary);
  if (!f || !(f << svg)) throw SchemaError("cannot write " + o.out);
  r.metrics["bytes"] = static_cast<double>(svg.size());
  r.metrics["resolution"] = o.resolution;
  r.labels["out"] = o.out;
  r.verdicts["written"] = true;
  return r;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-plank geometry and covering checks"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string scene_path;
  CommandOptions o;
  std::size_t budget = 0;
  std::uint64_t seed = 0;
  double eps_geom = 0.0, eps_opt = 0.0;
  auto* budget_opt = app.add_option("--budget", budget, "Sample / evaluation budget");
  auto* seed_opt = app.add_option("--seed", seed, "Seed (overrides the scene)");
  auto* eg_opt = app.add_option("--eps-geom", eps_geom, "Geometric tolerance");
  auto* eo_opt = app.add_option("--eps-opt", eps_opt, "Optimization tolerance");
  app.add_option("--scene", scene_path, "Scene JSON file");
  app.add_option("--out", o.out, "Output path (render)");
  app.add_option("--resolution", o.resolution, "Contour grid resolution")->check(CLI::Range(2, 8192));
  app.add_option("--k", o.k, "Subspace dimension");
  app.add_flag("--closed", o.closed, "Closed multi-planks");
  app.add_flag("--timing", o.timing, "Include wall time in the report");

  struct Sub {
    const char* name;
    Report (*fn)(const Scene&, const CommandOptions&);
    const char* help;
  };
  const Sub subs[] = {{"meb", cmd_meb, "Minimum enclosing balls of the generating sets"},
                      {"inradii", cmd_inradii, "Upper and lower intrinsic inradii of K"},
                      {"plank-check", cmd_plank_check, "Membership definitions agree"},
                      {"stratify", cmd_stratify, "Anti-Delaunay stratification checks"},
                      {"verify", cmd_verify, "Farthest-point escape and covering inequality"},
                      {"pizza", cmd_pizza, "Largest piece after fan cuts of the unit disk"},
                      {"sharpness", cmd_sharpness, "Two-multi-plank disk cover"},
                      {"normed", cmd_normed, "Checks under a polygonal gauge"},
                      {"render", cmd_render, "SVG figure of the scene"}};
  for (const auto& sub : subs) {
    auto* sc = app.add_subcommand(sub.name, sub.help);
    if (std::string(sub.name) == "sharpness") {
      sc->add_option("--N", o.sharp_n, "Points per circle");
      sc->add_option("--r", o.sharp_r, "Circle radius");
      sc->add_flag("--bisect", o.bisect, "Also bisect for the smallest covering radius");
    }
    if (std::string(sub.name) == "render") sc->add_flag("--strata", o.strata, "Draw the stratification skeleton");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  if (budget_opt->count()) o.budget = budget;
  if (seed_opt->count()) o.seed = seed;
  if (eg_opt->count()) o.eps_geom = eps_geom;
  if (eo_opt->count()) o.eps_opt = eps_opt;

  const auto* chosen = app.get_subcommands().front();
  const Sub* sub = nullptr;
  for (const auto& s : subs)
    if (chosen->get_name() == s.name) sub = &s;

  try {
    Scene scene;
    if (!scene_path.empty()) {
      scene = load_scene(scene_path);
    } else if (chosen->get_name() != "sharpness") {
      throw SchemaError("--scene is required");
    }
    const auto t0 = std::chrono::steady_clock::now();
    Report rep = sub->fn(scene, o);
    if (o.timing)
      rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out << rep.to_json().dump(2) << "\n";
    return rep.all_hold() ? 0 : 1;
  } catch (const SchemaError& e) {
    err << "input error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << "\n";
  } catch (const std::length_error& e) {
    err << "input error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return 2;
}

}  // namespace mplank
