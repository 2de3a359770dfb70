#pragma once

#include <iosfwd>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "fsps/baselines.hpp"
#include "fsps/metrics.hpp"
#include "fsps/solver.hpp"

namespace fsps {

// Parsed experiment description. The JSON schema is documented in the README;
// unknown fields are validation errors.
struct ExperimentConfig {
  std::string experiment;  // toy-beta-sweep | diverge | sharp-ratio | ct | custom
  std::string solver;      // fsps | adaptive | nls | dinkelbach | sart | compare
  std::string out_dir = "runs";
  std::vector<std::uint64_t> seeds{0};
  int threads = 1;
  FspsConfig solver_params;
  std::vector<FspsConfig> stages;          // optional two-stage override list
  DinkelbachConfig dinkelbach;
  std::vector<double> beta_values;         // toy sweep
  int harness_iterations = 100;            // diverge
  std::vector<std::array<int, 3>> scenarios;  // sharp-ratio (n, m1, m2)
  std::vector<double> ct_ranges;           // ct
  int ct_n_img = 64;
  double ct_sigma = 0.0;
  int sart_iterations = 5000;
  double sart_relaxation = 1.0;
  double toy_rerr_tol = 1e-6;
  nlohmann::json custom_problem;           // custom
  nlohmann::json raw;                      // config echo
};

// Parses and fully validates; throws std::invalid_argument with a
// field-by-field message when the config is invalid.
ExperimentConfig parse_experiment_config(const nlohmann::json& j);

// All violations found in the file, without running anything.
std::vector<std::string> validate_config(const std::string& path);

// Runs the experiment, writing per-run trace CSVs, per-run summary JSONs and
// an aggregate CSV under cfg.out_dir. Returns a process exit status.
int run_experiment(const ExperimentConfig& cfg, std::ostream& log);

struct ExperimentInfo {
  std::string name;
  std::string description;
};
std::vector<ExperimentInfo> list_experiments();

}  // namespace fsps
