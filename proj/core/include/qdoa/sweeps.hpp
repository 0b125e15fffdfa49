#ifndef QDOA_SWEEPS_HPP
#define QDOA_SWEEPS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qdoa/bit_depth.hpp"
#include "qdoa/experiment_config.hpp"

namespace qdoa {

// One CSV row. `sweep_var` is the input SNR in dB for every sweep kind; the
// bit depth has its own column. Analytic rows carry estimator "analytic",
// NaN RMSE and zero trials.
struct SweepRow {
  double sweep_var = 0.0;
  BitDepth bits = BitDepth::infinite();
  std::string estimator;
  double rmse_deg = 0.0;
  double crlb_sqrt_deg = 0.0;
  double eta_db = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;

  // Field-wise; NaN compares equal to NaN so parsed files match their source.
  friend bool operator==(const SweepRow& a, const SweepRow& b) noexcept;
};

struct SweepResult {
  std::vector<SweepRow> rows;

  friend bool operator==(const SweepResult&, const SweepResult&) = default;
};

// sqrt(mean((est - truth)^2)) converted to degrees. Inputs in radians.
double rmse_deg(std::span<const double> estimates, double truth);

// sqrt(CRLB_b) in degrees for the config's scenario at input SNR gamma_db.
double crlb_sqrt_deg(const ExperimentConfig& config, BitDepth bits, double gamma_db);

// eta_b(gamma) for every (gamma, b) of the config. No randomness.
SweepResult run_loss_factor_vs_bits(const ExperimentConfig& config);
SweepResult run_loss_factor_vs_snr(const ExperimentConfig& config);

// Monte Carlo RMSE for each (gamma, b, estimator). Trial t draws from the
// stream derive_stream_key(seed, t) at every grid point, and both estimators
// see the same snapshots, so results do not depend on `threads`
// (0 = hardware concurrency). Estimation failures are counted, not averaged.
SweepResult run_rmse_vs_snr(const ExperimentConfig& config, unsigned threads = 0);

// MUSIC pseudospectrum of one simulated realization (trial 0 of the seed) at
// the first configured bit depth and SNR.
struct SpectrumPoint {
  double theta_deg;
  double value;
};
std::vector<SpectrumPoint> run_spectrum(const ExperimentConfig& config, double grid_step_deg = 0.01);

// Closed-form and trace-formula bounds for every (gamma, b) of the config.
struct CrlbRow {
  double snr_db;
  BitDepth bits = BitDepth::infinite();
  double effective_snr;
  double fim_closed_form;
  double fim_numeric;
  double crlb_rad2;
  double crlb_exact_rad2;
  double crlb_sqrt_deg;
  double eta_db;
};
std::vector<CrlbRow> run_crlb_table(const ExperimentConfig& config);

}  // namespace qdoa

#endif  // QDOA_SWEEPS_HPP
