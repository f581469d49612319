#pragma once

#include <cstdint>
#include <vector>

#include "spde/elliptic_operator.hpp"
#include "spde/model.hpp"
#include "spde/wiener.hpp"

namespace spde {

/// Nonlinearity and diffusion bundled; the coefficients of the equation.
struct ModelSpec {
  NonlinearitySpec nonlinearity;
  DiffusionSpec diffusion;
};

/// State snapshots along the time grid, with provenance.
struct Trajectory {
  std::vector<double> times;
  std::vector<SpectralField> fields;
  int picard_level = 0;
  std::uint64_t path_hash = 0;
  std::uint64_t config_fingerprint = 0;

  const SpectralField& at(int j) const { return fields[static_cast<std::size_t>(j)]; }
  bool all_finite() const;
};

struct SolverConfig {
  double horizon = 1.0;   // T
  int steps = 256;        // J, power of two
  int modes = 16;         // K
  int dim = 1;            // N
  double p = 2.0;
  double q = 4.0;
  int m = 1;
  int picard_depth = 8;   // n_max
  double tolerance = 0.0; // H-distance stop; 0 runs the full depth
  double window = 0.0;    // T~ for partitioned solves; 0 means whole interval
  EllipticOperatorSpec op = EllipticOperatorSpec::diagonal(1, 1.0);
  ModelSpec model;

  double dt() const { return horizon / steps; }
  double contraction_exponent() const {  // delta = (2l-1)/(2l)
    return static_cast<double>(op.order() - 1) / op.order();
  }
  void validate() const;
  std::uint64_t fingerprint() const;
};

/// H-norm per-path proxy: (integral_0^T ||a(t)-b(t)||_{L^p}^q dt)^{1/q},
/// trapezoidal in time.
double trajectory_distance(const Trajectory& a, const Trajectory& b, double p,
                           double q);

/// One Picard sweep: exponential left-point step against the noise path,
/// with the phi1-weighted drift.  u^n(t_j) = S(t_j)u0 + v_j, v_0 = 0,
/// v_{j+1} = S(dt) v_j + (-A)^{-1}(I - S(dt)) F(u^{n-1}(t_j))
///                     + sigma(u^{n-1}(t_j)) dW_j.
Trajectory mild_step_accumulate(const EllipticOperatorSpec& op, const ModelSpec& model,
                                const WienerPath& path, const Trajectory& prev);

struct PicardResult {
  std::vector<Trajectory> levels;  // u^0 .. u^n
  std::vector<double> deltas;      // H-distance between successive iterates
  bool converged = false;
};

/// Picard iteration against one fixed noise path, u^0 == u0 in time.
PicardResult picard_solve(const SolverConfig& config, const WienerPath& path,
                          const SpectralField& u0);

/// Production single-pass stepping: coefficients read from the solution
/// being built (left point).  Coincides with the Picard fixed point.
Trajectory direct_solve(const SolverConfig& config, const WienerPath& path,
                        const SpectralField& u0);

struct ContractionRecord {
  double measured_rate = 0.0;
  double predicted = 0.0;       // C_pred (T^{1-delta} + T^{1/2})
  double delta_exponent = 0.0;  // (2l-1)/(2l)
  bool degenerate = false;      // deltas at the numerical floor, no ratio taken
  std::vector<double> per_path_rates;
};

/// Max over paths of successive Picard delta ratios vs the certified-constant
/// prediction.
ContractionRecord contraction_probe(const SolverConfig& config,
                                    const std::vector<WienerPath>& paths,
                                    const SpectralField& u0);

/// Solve on [0,T~], restart from the terminal value, concatenate.  The
/// window must align with the time grid.  Throws on sub-solve
/// non-convergence when a tolerance is set.
Trajectory partitioned_solve(const SolverConfig& config, const WienerPath& path,
                             const SpectralField& u0);

struct FactorizationRecord {
  double direct_l2 = 0.0;
  double factorized_l2 = 0.0;
  double rel_err = 0.0;
};

/// Stochastic-convolution factorization identity at time t, integrand frozen
/// at u == 0 (additive reading of sigma).  Kernels (t-s)^{alpha-1} and
/// (s-r)^{-alpha} are integrated exactly per cell; the semigroup factor is
/// frozen at cell midpoints.  `deterministic` replaces dW by ds and compares
/// against the closed-form single convolution.
FactorizationRecord factorization_check(const EllipticOperatorSpec& op,
                                        const DiffusionSpec& diffusion,
                                        const WienerPath& path, double alpha, double t,
                                        int dim, int modes,
                                        bool deterministic = false);

/// Terminal state of the exponential left-point scheme for purely additive
/// noise started from rest, computed with precomputed per-mode tables.  Bit
/// compatible with direct_solve on the same inputs; the fast path behind
/// linear_oracle.
SpectralField linear_terminal_state(const EllipticOperatorSpec& op,
                                    const DiffusionSpec& diffusion,
                                    const WienerPath& path, int dim, int modes);

struct ModeVariance {
  std::vector<int> wavevector;
  int coord = 0;  // 0 constant/cos coordinate, 1 sin coordinate
  double measured = 0.0;
  double exact = 0.0;
  double std_error = 0.0;
};

struct LinearOracleReport {
  std::vector<ModeVariance> variances;
  std::vector<double> coupling_errors;  // ||u_J - u_{2J}||_{L^2(Omega;L^2)} ladder
  double strong_order = 0.0;
};

/// Additive-noise exact statistics: per-mode stationary variance against
/// (1 - e^{-2 lambda T}) / (2 lambda), and the strong order measured by
/// coupled Richardson refinement.
LinearOracleReport linear_oracle(const EllipticOperatorSpec& op,
                                 const DiffusionSpec& diffusion, int dim, int modes,
                                 double horizon, int steps, int n_paths,
                                 std::uint64_t seed);

}  // namespace spde
