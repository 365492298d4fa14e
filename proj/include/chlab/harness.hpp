#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace chlab {

enum class ScenarioKind {
  SinglePeakon,
  PerturbedPeakon,
  MultipeakonExact,
  PeakonTrain,
  MonotonicityAudit,
  LiouvilleProbe,
  EigenSpeedCheck,
};

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::SinglePeakon;
  double c = 1.0;
  double theta = 0.0;         // 0 -> c/4
  double perturbation = 0.0;  // initial H1 distance; 0 -> 0.05*c
  std::vector<double> p;
  std::vector<double> q;
  int N = 0;                  // peakon_train size
  double spacing = 20.0;      // peakon_train spacing
  double dx = 0.02;
  double T = 10.0;
  double dt = 1e-3;           // ODE kinds
  double cfl = 0.5;
  std::vector<double> R = {5.0, 10.0, 15.0};
  double gamma = 0.0;
  int n = 0;                  // mollifier index; 0 -> ceil(1/(8 dx))
  int n0 = 0;                 // modulation index; 0 -> search
  unsigned long seed = 1;
  int stride = 0;             // snapshot stride; 0 -> auto
  std::string out;            // output directory; may be overridden by CLI

  /// The config as canonical key = value lines, for embedding in outputs.
  std::vector<std::string> header_lines() const;
};

/// Raised with the offending line number in the message.
struct config_error : std::runtime_error {
  int line = 0;
  config_error(int line_, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what),
        line(line_) {}
};

/// key = value per line, '#' comments, comma-separated lists. Unknown keys,
/// non-finite numbers, missing required keys and theta >= c are rejected
/// with their line number.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);

struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double bound = 0.0;
};

struct ScenarioReport {
  std::vector<std::string> files;
  std::vector<CheckResult> checks;
  int chosen_n0 = 0;
  bool all_passed() const;
};

/// Runs the experiment, writes its CSV outputs plus summary.txt into
/// out_dir (cfg.out if empty), and returns the checks. Deterministic for a
/// fixed config.
ScenarioReport run_scenario(const ScenarioConfig& cfg,
                            const std::string& out_dir = "",
                            bool quiet = false);

/// Frozen error bands for the field solver, from a one-time refinement
/// study (tools/calibrate).
namespace calibration {
/// H1 error band for a mollified unit peakon run to time T at spacing dx.
double h1_band(double c, double dx, double T);
/// Relative energy drift band for the same run.
double energy_drift_band(double dx, double T);
/// Relative momentum drift band.
double momentum_drift_band(double dx, double T);
}  // namespace calibration

}  // namespace chlab
