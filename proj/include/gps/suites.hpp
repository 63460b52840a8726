#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gps/domains.hpp"

namespace gps {

/// Deterministic generator (SplitMix64); identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  double uniform();                      // [0, 1)
  double uniform(double a, double b);
  double normal();                       // Box-Muller, two draws per call
 private:
  std::uint64_t state_;
};

struct ExperimentConfig {
  int p = 1;
  int q = 2;
  MirroredBallDomain domain{{0.0, 0.0}, 2.0, 1.0};
  std::vector<int> levels{2, 3, 4, 5};
  double fd_step = 1e-5;   // pointwise differentiation step
  double pv_factor = 2.0;  // pv_epsilon = pv_factor * volume mesh
  std::uint64_t seed = 42;
  std::vector<std::string> suites{"all"};

  /// Throws std::invalid_argument with the offending field path.
  void validate() const;
};

ExperimentConfig default_config();
/// Parses the key-value format with [domain] section; unknown keys are
/// rejected with their path.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

struct ResultRow {
  std::string suite;
  std::string case_name;
  int level = 0;
  std::string metric;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

const std::vector<std::string>& suite_names();

/// Runs one named suite (or "all"). Deterministic given (config, seed).
std::vector<ResultRow> run_suite(const std::string& name, const ExperimentConfig& config);

/// Header suite,case,level,metric,value,tolerance,pass; 15 significant
/// digits, LF line endings.
void emit_csv(const std::vector<ResultRow>& rows, std::ostream& os);
void emit_csv_file(const std::vector<ResultRow>& rows, const std::string& path);

}  // namespace gps
