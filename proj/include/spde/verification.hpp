#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "spde/analysis.hpp"
#include "spde/harness.hpp"

namespace spde {

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string details;
};

struct SuiteResult {
  std::string name;
  std::vector<CheckResult> checks;
  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

struct VerificationReport {
  std::vector<SuiteResult> suites;
  bool all_pass() const {
    for (const auto& s : suites)
      if (!s.pass()) return false;
    return true;
  }
};

struct VerifyOptions {
  std::string filter;                   // substring of suite names to run
  std::string baseline_dir = "baselines";
  bool regen_baselines = false;
};

/// Frozen-seed invariant suites for every module; the `verify` subcommand.
VerificationReport run_full_verification(const VerifyOptions& options);
nlohmann::json verification_to_json(const VerificationReport& report);

/// Deterministic random trig polynomial for suite construction; coefficients
/// decay like (1+|k|^2)^{-decay}.
SpectralField suite_random_field(int dim, int cutoff, std::uint64_t id,
                                 double decay = 1.0, double amplitude = 1.0);

// --- frozen suites shared by `verify` and the acceptance gate ---

struct MoserCase {
  ScalarFunction outer = ScalarFunction::identity();
  SpectralField f;
  int m = 2;
  double p = 2.0;
};
std::vector<MoserCase> frozen_moser_suite();

struct XMoserCase {
  SeparableFunction outer{Harmonic{}, ScalarFunction::identity()};
  SpectralField f;
  int m = 2;
  double p = 2.0;
};
std::vector<XMoserCase> frozen_x_moser_suite();

/// Max Moser ratio over the suite at amplitude scales {1,2,4,8}.
double moser_suite_max_ratio();
double x_moser_suite_max_ratio();
double first_order_suite_max_ratio();
double interpolation_suite_max_ratio();
double holder_embedding_suite_max_ratio();

struct AnalysisBaselines {
  double moser_cstar = 0.0;
  double moser_x_cstar = 0.0;
  double first_order_cstar = 0.0;
  double interpolation_cstar = 0.0;
  double holder_embedding_cstar = 0.0;
};
struct HarnessBaselines {
  double scaling_c = 0.0;
};

/// Throws with a baseline-mismatch message if missing or corrupted.
AnalysisBaselines load_analysis_baselines(const std::string& dir);
HarnessBaselines load_harness_baselines(const std::string& dir);
/// Deliberate regeneration: recompute over the frozen suites and store with
/// two percent headroom.
void regenerate_baselines(const std::string& dir);

// --- shared experiment definitions (acceptance criteria reuse these) ---

/// Small-horizon nonlinear setup used for contraction measurements.
SolverConfig contraction_suite_config(double horizon, int steps);
SpectralField contraction_suite_initial(int dim, int modes);

/// Uniform-in-n moment setup: tanh drift, mild multiplicative noise.
ExperimentConfig uniformity_suite_config(int paths, int modes, int steps,
                                         int picard_depth);

/// Scaling-study setup (small ensemble, random initial data).
ExperimentConfig scaling_suite_config();

/// Gentle-symbol additive-noise setup driving every retained mode of the
/// linear oracle; returns the operator and matching diffusion.
struct LinearOracleSetup {
  EllipticOperatorSpec op = EllipticOperatorSpec::diagonal(1, 1.0);
  DiffusionSpec diffusion;
  int dim = 1;
  int modes = 8;
};
LinearOracleSetup linear_oracle_setup(int modes);

}  // namespace spde
