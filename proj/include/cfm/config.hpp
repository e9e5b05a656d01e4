#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cfm/hypersurface.hpp"

namespace cfm {

/// Flat `key = value` text; `#` starts a comment, blank lines are ignored.
/// Throws ConfigError on malformed lines or duplicate keys.
class KeyValues {
 public:
  static KeyValues parse(const std::string& text, const std::string& origin = "<string>");
  static KeyValues load(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::string get(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key, long long fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_doubles(const std::string& key, std::vector<double> fallback) const;
  /// Inserts the entries of `other`, replacing existing keys.
  void merge(const KeyValues& other);
  const std::map<std::string, std::string>& entries() const noexcept { return values_; }

 private:
  std::string origin_;
  std::map<std::string, std::string> values_;
};

/// Description of a surface from the built-in families.
struct SurfaceSpec {
  std::string family = "chart-sphere";  ///< chart-sphere | colatitude | tilted
  int chart = 1;
  std::vector<double> center;
  double radius = 1.0;
  int orientation = 1;
  double theta0 = 1.0;
  std::vector<double> axis;
  double angle = 1.0;
};

/// Reads `<prefix>.family`, `<prefix>.chart`, ... over the given defaults.
SurfaceSpec read_surface(const KeyValues& kv, const std::string& prefix, SurfaceSpec defaults);
Hypersurface build_surface(const GluedManifold& M, const SurfaceSpec& spec, int quad_order);

/// A ManifoldPoint written as "chart c1 c2 ...", or "chart inf".
ManifoldPoint parse_point(const std::string& text, int n);

struct RunConfig {
  ManifoldKind kind = ManifoldKind::TwoSphere;
  int n = 2;
  double r = 2.0;
  std::vector<double> chart_scales{1.0, 1.0};
  std::string suite;
  std::uint64_t seed = 20240601;
  std::optional<int> order;  ///< overrides the suites' quadrature orders
  int samples = 1000;
  std::string out;
  std::string csv;
  std::map<std::string, double> tolerances;  ///< tol.<check name>

  double inject_vahlen = 0.0;   ///< corrupts d by this multiple of e12
  int inject_weight_offset = 0; ///< added to the weight exponent of J
  bool inject_normal_flip = false;
  bool inject_diagonal = false; ///< asks the kernel suite for C_M(x, x)

  KeyValues geometry;  ///< surface/point overrides, including the surface file

  GluedManifold manifold() const;
  double tolerance(const std::string& check, double fallback) const;
};

/// Validates and converts parsed key/values. Throws ConfigError.
RunConfig run_config_from(const KeyValues& kv, const std::string& base_dir = ".");
RunConfig load_run_config(const std::string& path);

}  // namespace cfm
