#include "cfm/config.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cfm/errors.hpp"

namespace cfm {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc{} || res.ptr != end)
    throw ConfigError("config: '" + key + "' is not a number: '" + text + "'");
  return v;
}

std::vector<std::string> words(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

}  // namespace

KeyValues KeyValues::parse(const std::string& text, const std::string& origin) {
  KeyValues kv;
  kv.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = origin + ":" + std::to_string(lineno);
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || key.find_first_of(" \t") != std::string::npos)
      throw ConfigError(where + ": malformed key");
    if (!kv.values_.emplace(key, value).second) throw ConfigError(where + ": duplicate key '" + key + "'");
  }
  return kv;
}

KeyValues KeyValues::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

std::string KeyValues::get(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double KeyValues::get_double(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : to_double(key, it->second);
}

long long KeyValues::get_int(const std::string& key, long long fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  long long v = 0;
  const std::string& t = it->second;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc{} || res.ptr != t.data() + t.size())
    throw ConfigError("config: '" + key + "' is not an integer: '" + t + "'");
  return v;
}

bool KeyValues::get_bool(const std::string& key, bool fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  if (it->second == "true" || it->second == "1" || it->second == "yes") return true;
  if (it->second == "false" || it->second == "0" || it->second == "no") return false;
  throw ConfigError("config: '" + key + "' is not a boolean: '" + it->second + "'");
}

std::vector<double> KeyValues::get_doubles(const std::string& key, std::vector<double> fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::vector<double> out;
  for (const std::string& w : words(it->second)) out.push_back(to_double(key, w));
  return out;
}

void KeyValues::merge(const KeyValues& other) {
  for (const auto& [k, v] : other.values_) values_[k] = v;
}

SurfaceSpec read_surface(const KeyValues& kv, const std::string& prefix, SurfaceSpec d) {
  const std::string p = prefix + ".";
  d.family = kv.get(p + "family", d.family);
  d.chart = static_cast<int>(kv.get_int(p + "chart", d.chart));
  d.center = kv.get_doubles(p + "center", d.center);
  d.radius = kv.get_double(p + "radius", d.radius);
  d.orientation = static_cast<int>(kv.get_int(p + "orientation", d.orientation));
  d.theta0 = kv.get_double(p + "theta0", d.theta0);
  d.axis = kv.get_doubles(p + "axis", d.axis);
  d.angle = kv.get_double(p + "angle", d.angle);
  return d;
}

Hypersurface build_surface(const GluedManifold& M, const SurfaceSpec& s, int quad_order) {
  if (s.chart != 1 && s.chart != 2) throw ConfigError("surface: chart must be 1 or 2");
  Hypersurface S;
  if (s.family == "chart-sphere") {
    if (s.center.size() != static_cast<std::size_t>(M.n()))
      throw ConfigError("surface: chart-sphere center needs n components");
    S = chart_sphere(M, s.chart, Vec(s.center), s.radius, s.orientation, quad_order);
  } else if (s.family == "colatitude") {
    S = colatitude_sphere(M, s.chart, s.theta0, quad_order);
  } else if (s.family == "tilted") {
    if (s.axis.size() != static_cast<std::size_t>(M.n() + 1))
      throw ConfigError("surface: tilted axis needs n+1 components");
    S = tilted_sphere(M, s.chart, Vec(s.axis), s.angle, quad_order);
  } else {
    throw ConfigError("surface: unknown family '" + s.family + "'");
  }
  validate(M, S);
  return S;
}

ManifoldPoint parse_point(const std::string& text, int n) {
  const std::vector<std::string> w = words(text);
  if (w.empty()) throw ConfigError("point: empty description");
  const double chart = to_double("point", w[0]);
  if (chart != 1.0 && chart != 2.0) throw ConfigError("point: chart must be 1 or 2");
  const int id = static_cast<int>(chart);
  const auto dim = static_cast<std::size_t>(n);
  if (w.size() == 2 && w[1] == "inf") return {id, ExtendedPoint::infinity(dim)};
  if (w.size() != dim + 1) throw ConfigError("point: expected chart and n coordinates");
  Vec v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = to_double("point", w[i + 1]);
  return {id, v};
}

GluedManifold RunConfig::manifold() const {
  GluedManifold::Options opt;
  opt.chart_scales = chart_scales;
  opt.weight_exponent = n + inject_weight_offset;
  return GluedManifold(kind, n, r, opt);
}

double RunConfig::tolerance(const std::string& check, double fallback) const {
  const auto it = tolerances.find(check);
  return it == tolerances.end() ? fallback : it->second;
}

RunConfig run_config_from(const KeyValues& kv, const std::string& base_dir) {
  static const std::vector<std::string> known = {
      "manifold.kind", "manifold.n", "manifold.r", "manifold.scales", "suite", "seed",
      "order", "samples", "out", "csv", "surface_file", "inject.vahlen_corruption",
      "inject.weight_exponent_offset", "inject.normal_flip", "inject.diagonal"};
  static const std::vector<std::string> geometry_prefixes = {"same.", "cross.", "inner.", "outer.",
                                                              "hardy."};
  RunConfig c;
  for (const auto& [key, value] : kv.entries()) {
    if (key.rfind("tol.", 0) == 0) {
      c.tolerances[key.substr(4)] = kv.get_double(key, 0.0);
    } else if (std::find(known.begin(), known.end(), key) != known.end()) {
      continue;
    } else if (std::any_of(geometry_prefixes.begin(), geometry_prefixes.end(),
                           [&](const std::string& p) { return key.rfind(p, 0) == 0; })) {
      c.geometry.merge(KeyValues::parse(key + " = " + value, "config"));
    } else {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }
  const std::string kind = kv.get("manifold.kind", "two-sphere");
  if (kind == "two-sphere") c.kind = ManifoldKind::TwoSphere;
  else if (kind == "plane-sphere") c.kind = ManifoldKind::PlaneSphere;
  else throw ConfigError("config: manifold.kind must be two-sphere or plane-sphere");
  c.n = static_cast<int>(kv.get_int("manifold.n", 2));
  c.r = kv.get_double("manifold.r", 2.0);
  c.chart_scales = kv.get_doubles("manifold.scales", {1.0, 1.0});
  c.suite = kv.get("suite", "");
  const long long seed = kv.get_int("seed", static_cast<long long>(c.seed));
  if (seed < 0) throw ConfigError("config: seed must be nonnegative");
  c.seed = static_cast<std::uint64_t>(seed);
  if (kv.has("order")) c.order = static_cast<int>(kv.get_int("order", 0));
  c.samples = static_cast<int>(kv.get_int("samples", c.samples));
  c.out = kv.get("out", "");
  c.csv = kv.get("csv", "");
  c.inject_vahlen = kv.get_double("inject.vahlen_corruption", 0.0);
  c.inject_weight_offset = static_cast<int>(kv.get_int("inject.weight_exponent_offset", 0));
  c.inject_normal_flip = kv.get_bool("inject.normal_flip", false);
  c.inject_diagonal = kv.get_bool("inject.diagonal", false);

  if (c.n < 1 || c.n > 6) throw ConfigError("config: manifold.n must be between 1 and 6");
  if (!(c.r > 1.0)) throw ConfigError("config: manifold.r must exceed 1");
  if (c.chart_scales.size() != 2 || !(c.chart_scales[0] > 0.0) || !(c.chart_scales[1] > 0.0))
    throw ConfigError("config: manifold.scales needs two positive radii");
  if (c.samples < 1) throw ConfigError("config: samples must be positive");
  if (c.order && (*c.order < 2 || *c.order > 4096))
    throw ConfigError("config: order must be between 2 and 4096");
  if (c.n + c.inject_weight_offset < 1) throw ConfigError("config: weight exponent must stay positive");

  if (kv.has("surface_file")) {
    std::filesystem::path p = kv.get("surface_file", "");
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    const KeyValues surf = KeyValues::load(p.string());
    for (const auto& entry : surf.entries())
      if (std::none_of(geometry_prefixes.begin(), geometry_prefixes.end(),
                       [&](const std::string& g) { return entry.first.rfind(g, 0) == 0; }))
        throw ConfigError("surface file: unknown key '" + entry.first + "'");
    KeyValues merged = surf;
    merged.merge(c.geometry);  // inline config entries win
    c.geometry = merged;
  }
  return c;
}

RunConfig load_run_config(const std::string& path) {
  const std::filesystem::path p(path);
  return run_config_from(KeyValues::load(path), p.has_parent_path() ? p.parent_path().string() : ".");
}

}  // namespace cfm
