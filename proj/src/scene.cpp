#include "mplank/scene.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mplank {

using nlohmann::json;

namespace {

Point parse_point(const json& j, int dim, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw SchemaError(std::string(what) + ": expected an array of " + std::to_string(dim) + " numbers");
  Point p(dim);
  for (int i = 0; i < dim; ++i) {
    if (!j[static_cast<std::size_t>(i)].is_number()) throw SchemaError(std::string(what) + ": non-numeric coordinate");
    p(i) = j[static_cast<std::size_t>(i)].get<double>();
  }
  return p;
}

std::vector<Point> parse_points(const json& j, int dim, const char* what) {
  if (!j.is_array()) throw SchemaError(std::string(what) + ": expected an array of points");
  std::vector<Point> out;
  for (const auto& p : j) out.push_back(parse_point(p, dim, what));
  return out;
}

json points_json(const std::vector<Point>& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back(point_json(p));
  return a;
}

bool same_points(const std::vector<Point>& a, const std::vector<Point>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].size() != b[i].size() || a[i] != b[i]) return false;
  return true;
}

BodySpec parse_body(const json& j, int dim) {
  if (!j.is_object() || j.size() != 1) throw SchemaError("body: expected one of polygon, vertices, box");
  BodySpec b;
  if (j.contains("polygon")) {
    if (dim != 2) throw SchemaError("body: polygon requires dim 2");
    b.kind = "polygon";
    b.points = parse_points(j["polygon"], 2, "polygon");
  } else if (j.contains("vertices")) {
    b.kind = "vertices";
    b.points = parse_points(j["vertices"], dim, "vertices");
  } else if (j.contains("box")) {
    b.kind = "box";
    const auto& bx = j["box"];
    if (!bx.is_object() || !bx.contains("lo") || !bx.contains("hi")) throw SchemaError("box: needs lo and hi");
    b.points = {parse_point(bx["lo"], dim, "box.lo"), parse_point(bx["hi"], dim, "box.hi")};
  } else {
    throw SchemaError("body: expected one of polygon, vertices, box");
  }
  return b;
}

json body_json(const BodySpec& b) {
  if (b.kind == "box") return {{"box", {{"lo", point_json(b.points[0])}, {"hi", point_json(b.points[1])}}}};
  return {{b.kind, points_json(b.points)}};
}

const std::vector<std::string> kKeys = {"dim",   "seed",   "generating_sets", "translations", "bodies",
                                        "fans",  "gauge",  "planks",          "shifts",       "tolerance"};

}  // namespace

json point_json(const Point& p) {
  json a = json::array();
  for (Eigen::Index i = 0; i < p.size(); ++i) a.push_back(p(i));
  return a;
}

Polytope BodySpec::build(const Tolerance& tol) const {
  if (kind == "polygon") return Polytope::polygon(points, tol);
  if (kind == "box") return Polytope::box(points[0], points[1]);
  return Polytope::from_vertices(points, tol);
}

bool BodySpec::operator==(const BodySpec& o) const { return kind == o.kind && same_points(points, o.points); }

Point Scene::translation(std::size_t i) const {
  if (translations.empty()) return Point::Zero(dim);
  return translations.at(i);
}

Tolerance Scene::tolerance() const {
  Tolerance t;
  if (eps_geom) t.eps_geom = *eps_geom;
  if (eps_opt) t.eps_opt = *eps_opt;
  return t;
}

bool Scene::operator==(const Scene& o) const {
  if (dim != o.dim || seed != o.seed || generating_sets.size() != o.generating_sets.size()) return false;
  for (std::size_t i = 0; i < generating_sets.size(); ++i)
    if (!same_points(generating_sets[i], o.generating_sets[i])) return false;
  if (!same_points(translations, o.translations) || K != o.K || covers != o.covers) return false;
  if (fans.size() != o.fans.size()) return false;
  for (std::size_t i = 0; i < fans.size(); ++i)
    if (fans[i].apex != o.fans[i].apex || fans[i].m != o.fans[i].m || fans[i].rotation != o.fans[i].rotation)
      return false;
  if (gauge.has_value() != o.gauge.has_value() || (gauge && !same_points(*gauge, *o.gauge))) return false;
  return same_points(planks, o.planks) && same_points(shifts, o.shifts) && eps_geom == o.eps_geom &&
         eps_opt == o.eps_opt;
}

Scene parse_scene(const json& j) {
  try {
    if (!j.is_object()) throw SchemaError("scene: expected a JSON object");
    for (const auto& [key, _] : j.items())
      if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) throw SchemaError("scene: unknown key " + key);
    Scene s;
    if (j.contains("dim")) {
      if (!j["dim"].is_number_integer()) throw SchemaError("dim: expected an integer");
      s.dim = j["dim"].get<int>();
    }
    if (s.dim != 2 && s.dim != 3) throw SchemaError("dim: must be 2 or 3");
    if (j.contains("seed")) {
      if (!j["seed"].is_number_unsigned()) throw SchemaError("seed: expected a non-negative integer");
      s.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("generating_sets")) {
      if (!j["generating_sets"].is_array()) throw SchemaError("generating_sets: expected an array");
      for (const auto& g : j["generating_sets"]) s.generating_sets.push_back(parse_points(g, s.dim, "generating_sets"));
    }
    if (j.contains("translations")) {
      s.translations = parse_points(j["translations"], s.dim, "translations");
      if (s.translations.size() != s.generating_sets.size())
        throw SchemaError("translations: need one per generating set");
    }
    if (j.contains("bodies")) {
      const auto& b = j["bodies"];
      if (!b.is_object()) throw SchemaError("bodies: expected an object");
      for (const auto& [key, _] : b.items())
        if (key != "K" && key != "C") throw SchemaError("bodies: unknown key " + key);
      if (b.contains("K")) s.K = parse_body(b["K"], s.dim);
      if (b.contains("C")) {
        if (!b["C"].is_array()) throw SchemaError("bodies.C: expected an array");
        for (const auto& c : b["C"]) s.covers.push_back(parse_body(c, s.dim));
      }
    }
    if (j.contains("fans")) {
      if (s.dim != 2) throw SchemaError("fans: require dim 2");
      if (!j["fans"].is_array()) throw SchemaError("fans: expected an array");
      for (const auto& f : j["fans"]) {
        if (!f.is_object()) throw SchemaError("fans: expected objects");
        Fan fan;
        if (f.contains("apex")) fan.apex = parse_point(f["apex"], 2, "fans.apex");
        if (f.contains("m")) {
          if (!f["m"].is_number_integer()) throw SchemaError("fans.m: expected an integer");
          fan.m = f["m"].get<int>();
        }
        if (fan.m < 2) throw SchemaError("fans.m: must be at least 2");
        if (f.contains("rotation")) {
          if (!f["rotation"].is_number()) throw SchemaError("fans.rotation: expected a number");
          fan.rotation = f["rotation"].get<double>();
        }
        s.fans.push_back(fan);
      }
    }
    if (j.contains("gauge")) {
      if (s.dim != 2) throw SchemaError("gauge: requires dim 2");
      if (!j["gauge"].is_object() || !j["gauge"].contains("polygon")) throw SchemaError("gauge: expected {polygon: [...]}");
      s.gauge = parse_points(j["gauge"]["polygon"], 2, "gauge.polygon");
    }
    if (j.contains("planks")) s.planks = parse_points(j["planks"], s.dim, "planks");
    if (j.contains("shifts")) s.shifts = parse_points(j["shifts"], s.dim, "shifts");
    if (j.contains("tolerance")) {
      const auto& t = j["tolerance"];
      if (!t.is_object()) throw SchemaError("tolerance: expected an object");
      if (t.contains("eps_geom")) s.eps_geom = t["eps_geom"].get<double>();
      if (t.contains("eps_opt")) s.eps_opt = t["eps_opt"].get<double>();
      try {
        s.tolerance().validate();
      } catch (const std::exception& e) {
        throw SchemaError(std::string("tolerance: ") + e.what());
      }
    }
    return s;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("scene: ") + e.what());
  }
}

Scene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read scene file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
  return parse_scene(j);
}

json to_json(const Scene& s) {
  json j;
  j["dim"] = s.dim;
  j["seed"] = s.seed;
  json sets = json::array();
  for (const auto& g : s.generating_sets) sets.push_back(points_json(g));
  j["generating_sets"] = sets;
  if (!s.translations.empty()) j["translations"] = points_json(s.translations);
  if (s.K || !s.covers.empty()) {
    json b = json::object();
    if (s.K) b["K"] = body_json(*s.K);
    if (!s.covers.empty()) {
      json c = json::array();
      for (const auto& body : s.covers) c.push_back(body_json(body));
      b["C"] = c;
    }
    j["bodies"] = b;
  }
  if (!s.fans.empty()) {
    json f = json::array();
    for (const auto& fan : s.fans) f.push_back({{"apex", point_json(fan.apex)}, {"m", fan.m}, {"rotation", fan.rotation}});
    j["fans"] = f;
  }
  if (s.gauge) j["gauge"] = {{"polygon", points_json(*s.gauge)}};
  if (!s.planks.empty()) j["planks"] = points_json(s.planks);
  if (!s.shifts.empty()) j["shifts"] = points_json(s.shifts);
  if (s.eps_geom || s.eps_opt) {
    json t = json::object();
    if (s.eps_geom) t["eps_geom"] = *s.eps_geom;
    if (s.eps_opt) t["eps_opt"] = *s.eps_opt;
    j["tolerance"] = t;
  }
  return j;
}

std::string scene_digest(const Scene& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const unsigned char c : to_json(s).dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

bool Report::all_hold() const {
  for (const auto& [_, v] : verdicts)
    if (!v) return false;
  return true;
}

json Report::to_json() const {
  json j;
  j["command"] = command;
  j["inputs_digest"] = digest;
  json m = json::object();
  for (const auto& [k, v] : metrics) m[k] = std::isfinite(v) ? json(v) : json(nullptr);
  j["metrics"] = m;
  j["verdicts"] = verdicts;
  json w = json::object();
  for (const auto& [k, p] : witnesses) w[k] = point_json(p);
  j["witnesses"] = w;
  if (!labels.empty()) j["labels"] = labels;
  j["budget"] = budget;
  if (wall_time) j["wall_time_s"] = *wall_time;
  return j;
}

}  // namespace mplank
