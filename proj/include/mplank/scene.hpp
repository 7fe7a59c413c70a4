#pragma once

// Scene files and command reports (JSON).

#include "mplank/geom.hpp"

#include "json.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mplank {

struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BodySpec {
  std::string kind = "polygon";  // polygon | vertices | box
  std::vector<Point> points;     // box: {lo, hi}

  Polytope build(const Tolerance& tol = {}) const;
  bool operator==(const BodySpec& o) const;
};

struct Scene {
  int dim = 2;
  std::uint64_t seed = 42;
  std::vector<std::vector<Point>> generating_sets;
  std::vector<Point> translations;  // empty, or one per generating set
  std::optional<BodySpec> K;
  std::vector<BodySpec> covers;     // bodies.C
  std::vector<Fan> fans;
  std::optional<std::vector<Point>> gauge;
  std::vector<Point> planks;        // u_i of the planks |<x,u_i>| < |u_i|^2
  std::vector<Point> shifts;
  std::optional<double> eps_geom;
  std::optional<double> eps_opt;

  Point translation(std::size_t i) const;
  Tolerance tolerance() const;
  bool operator==(const Scene& o) const;
};

/// Throws SchemaError on any structural problem.
Scene parse_scene(const nlohmann::json& j);
Scene load_scene(const std::string& path);
nlohmann::json to_json(const Scene& s);

/// FNV-1a of the canonical JSON dump, as 16 hex digits.
std::string scene_digest(const Scene& s);

struct Report {
  std::string command;
  std::string digest;
  std::map<std::string, double> metrics;
  std::map<std::string, bool> verdicts;
  std::map<std::string, Point> witnesses;
  std::map<std::string, std::string> labels;
  std::size_t budget = 0;
  std::optional<double> wall_time;

  bool all_hold() const;
  nlohmann::json to_json() const;
};

nlohmann::json point_json(const Point& p);

}  // namespace mplank
