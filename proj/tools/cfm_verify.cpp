#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cfm/errors.hpp"
#include "cfm/suites.hpp"

namespace {

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of Cauchy kernels on conformally flat glued manifolds"};
  app.require_subcommand(1);

  std::string config_path;
  long long seed = -1;
  int order = 0;
  std::string out_path;
  app.add_option("--config", config_path, "flat key = value configuration file");
  app.add_option("--seed", seed, "random seed (overrides config)");
  app.add_option("--order", order, "quadrature order / node count (overrides config)");
  app.add_option("--out", out_path, "report path (default: stdout)");

  for (const char* name : {"verify-algebra", "verify-kernel", "verify-cauchy", "hardy"})
    app.add_subcommand(name)->fallthrough();

  CLI11_PARSE(app, argc, argv);
  const std::string suite = app.get_subcommands().front()->get_name();

  cfm::RunConfig cfg;
  try {
    cfg = config_path.empty() ? cfm::run_config_from(cfm::KeyValues{}) : cfm::load_run_config(config_path);
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    if (order != 0) {
      if (order < 2 || order > 4096) throw cfm::ConfigError("--order must be between 2 and 4096");
      cfg.order = order;
    }
    if (!out_path.empty()) cfg.out = out_path;
    if (!cfg.suite.empty() && cfg.suite != suite)
      throw cfm::ConfigError("config selects suite '" + cfg.suite + "' but '" + suite + "' was requested");
  } catch (const std::exception& e) {
    std::cerr << "cfm_verify: " << e.what() << '\n';
    return 2;
  }

  const cfm::SuiteReport report = cfm::run_suite(suite, cfg);
  const std::string json = cfm::report_json(report, cfg);
  if (cfg.out.empty()) {
    std::cout << json;
  } else {
    if (!write_file(cfg.out, json)) {
      std::cerr << "cfm_verify: cannot write " << cfg.out << '\n';
      return 2;
    }
    for (const cfm::CheckRecord& c : report.checks)
      std::printf("%-4s %-40s %.3e %s %.1e\n", c.verdict == "pass" ? "ok" : c.verdict.c_str(), c.name.c_str(),
                  c.residual, c.comparison.c_str(), c.threshold);
  }
  if (!cfg.csv.empty() && !write_file(cfg.csv, cfm::report_csv(report))) {
    std::cerr << "cfm_verify: cannot write " << cfg.csv << '\n';
    return 2;
  }
  return report.passed() ? 0 : 1;
}
