#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cvdisc/gaussian.hpp"

namespace cvdisc::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kValidationFailed = 2, kNumeric = 3 };

struct GridAxis {
  std::string param;  // mu, ns, copies, mbar, background, target, m
  std::vector<Real> values;
};

// Parses "param=start:stop:steps" with an optional ":log" suffix.
GridAxis parse_grid(const std::string& text);

struct SweepConfig {
  std::string family = "pure-loss";
  Real background = 0.99L;
  Real target = 0.97L;
  Real background_eps = 0;  // thermal family only
  Real target_eps = 0;
  int m = 9;
  std::string space = "cpf:1";
  std::vector<std::string> probes{"full-ghz"};
  std::string odd_strategy = "single-idler";
  std::optional<Real> mu;
  std::optional<Real> ns;
  std::optional<Real> copies;
  std::optional<Real> mbar;
  std::vector<GridAxis> grids;
  std::string out;
  std::string format = "csv";
  bool classical = false;
  int threads = 0;  // 0: hardware concurrency
};

// Throws InvalidArgumentError naming the offending field.
void check_config(const SweepConfig& config);

// Entry point shared by the executable and the tests. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cvdisc::cli
