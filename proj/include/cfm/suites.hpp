#pragma once

#include <map>
#include <string>
#include <vector>

#include "cfm/config.hpp"

namespace cfm {

struct CheckRecord {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  std::string comparison = "<=";  ///< residual <= threshold, or ">=" for lower bounds
  std::string verdict;  ///< "pass", "fail" or "error"
  std::string detail;
};

struct ConvergenceRow {
  int order = 0;
  double error = 0.0;
  double estimated_error = 0.0;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckRecord> checks;
  std::map<std::string, std::vector<ConvergenceRow>> tables;
  bool passed() const;
};

SuiteReport cmd_verify_algebra(const RunConfig& config);
SuiteReport cmd_verify_kernel(const RunConfig& config);
SuiteReport cmd_verify_cauchy(const RunConfig& config);
SuiteReport cmd_hardy(const RunConfig& config);

/// Dispatches on verify-algebra, verify-kernel, verify-cauchy or hardy.
SuiteReport run_suite(const std::string& name, const RunConfig& config);

/// Deterministic JSON report (fixed key order, round-trip number formatting).
std::string report_json(const SuiteReport& report, const RunConfig& config);
/// "table,order,error,estimated_error" rows of every convergence table.
std::string report_csv(const SuiteReport& report);

}  // namespace cfm
