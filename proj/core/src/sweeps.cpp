#include "qdoa/sweeps.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>

#include "qdoa/crlb.hpp"
#include "qdoa/estimators.hpp"
#include "qdoa/quantizer.hpp"
#include "qdoa/rng.hpp"

namespace qdoa {

namespace {

constexpr double kNoiseFloor = 1.0;  // sigma_w^2; gamma sets sigma_s^2

bool same_double(double a, double b) noexcept {
  return (std::isnan(a) && std::isnan(b)) || a == b;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// Runs fn(i) for i in [0, count) on up to `threads` workers. The first
// exception thrown by any worker is rethrown on the caller.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  }
  pool.clear();
  if (error) std::rethrow_exception(error);
}

void sort_rows(std::vector<SweepRow>& rows, const std::vector<DoaMethod>& order) {
  auto rank = [&](const std::string& name) {
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (to_string(order[i]) == name) return i;
    }
    return order.size();
  };
  std::stable_sort(rows.begin(), rows.end(), [&](const SweepRow& a, const SweepRow& b) {
    if (a.sweep_var != b.sweep_var) return a.sweep_var < b.sweep_var;
    if (a.bits != b.bits) return a.bits < b.bits;
    return rank(a.estimator) < rank(b.estimator);
  });
}

SweepResult analytic_sweep(const ExperimentConfig& config) {
  config.validate();
  SweepResult result;
  for (double gamma_db : config.snr_grid_db) {
    for (BitDepth b : config.bits) {
      SweepRow row;
      row.sweep_var = gamma_db;
      row.bits = b;
      row.estimator = "analytic";
      row.rmse_deg = std::numeric_limits<double>::quiet_NaN();
      row.crlb_sqrt_deg = crlb_sqrt_deg(config, b, gamma_db);
      row.eta_db = performance_loss_db(b, db_to_linear(gamma_db));
      result.rows.push_back(std::move(row));
    }
  }
  sort_rows(result.rows, {});
  return result;
}

}  // namespace

bool operator==(const SweepRow& a, const SweepRow& b) noexcept {
  return same_double(a.sweep_var, b.sweep_var) && a.bits == b.bits && a.estimator == b.estimator &&
         same_double(a.rmse_deg, b.rmse_deg) && same_double(a.crlb_sqrt_deg, b.crlb_sqrt_deg) &&
         same_double(a.eta_db, b.eta_db) && a.trials == b.trials && a.failures == b.failures;
}

double rmse_deg(std::span<const double> estimates, double truth) {
  if (estimates.empty()) throw std::invalid_argument("RMSE of an empty estimate list");
  double sum = 0.0;
  for (double e : estimates) sum += (e - truth) * (e - truth);
  return rad_to_deg(std::sqrt(sum / static_cast<double>(estimates.size())));
}

double crlb_sqrt_deg(const ExperimentConfig& config, BitDepth bits, double gamma_db) {
  const OperatingPoint point(config.geometry(), deg_to_rad(config.theta_deg),
                             db_to_linear(gamma_db) * kNoiseFloor, kNoiseFloor, config.N,
                             QuantizerSpec(bits));
  return rad_to_deg(std::sqrt(crlb(point)));
}

SweepResult run_loss_factor_vs_bits(const ExperimentConfig& config) { return analytic_sweep(config); }

SweepResult run_loss_factor_vs_snr(const ExperimentConfig& config) { return analytic_sweep(config); }

std::vector<SpectrumPoint> run_spectrum(const ExperimentConfig& config, double grid_step_deg) {
  config.validate();
  const ArrayGeometry geometry = config.geometry();
  const double theta = deg_to_rad(config.theta_deg);
  const BitDepth b = config.bits.front();
  const double signal_power = db_to_linear(config.snr_grid_db.front()) * kNoiseFloor;
  const double total_power = signal_power + kNoiseFloor;
  const std::uint64_t key = derive_stream_key(config.seed, 0);

  SnapshotMatrix y = generate_snapshots(geometry, SourceSet::single(theta, signal_power),
                                        kNoiseFloor, config.N, key);
  if (!b.is_infinite()) {
    y = config.quantizer_mode == QuantizerMode::true_quantizer
            ? quantize_snapshots(y, design_lloyd_max(b.bits()), std::sqrt(total_power / 2.0))
            : aqnm_transform(y, QuantizerSpec(b), total_power, key);
  }
  const SubspaceDecomposition decomposition = decompose(sample_covariance(y), 1);
  const std::vector<double> grid = angle_grid(grid_step_deg);
  const std::vector<double> values = music_pseudospectrum(decomposition, geometry, grid);

  std::vector<SpectrumPoint> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = {rad_to_deg(grid[i]), values[i]};
  return out;
}

std::vector<CrlbRow> run_crlb_table(const ExperimentConfig& config) {
  config.validate();
  std::vector<CrlbRow> rows;
  for (double gamma_db : config.snr_grid_db) {
    for (BitDepth b : config.bits) {
      const OperatingPoint point(config.geometry(), deg_to_rad(config.theta_deg),
                                 db_to_linear(gamma_db) * kNoiseFloor, kNoiseFloor, config.N,
                                 QuantizerSpec(b));
      CrlbRow row{gamma_db, b, effective_snr(point), fim_closed_form(point), fim_numeric(point),
                  crlb(point), crlb_exact(point), 0.0,
                  performance_loss_db(b, db_to_linear(gamma_db))};
      row.crlb_sqrt_deg = rad_to_deg(std::sqrt(row.crlb_rad2));
      rows.push_back(row);
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const CrlbRow& a, const CrlbRow& b) {
    if (a.snr_db != b.snr_db) return a.snr_db < b.snr_db;
    return a.bits < b.bits;
  });
  return rows;
}

SweepResult run_rmse_vs_snr(const ExperimentConfig& config, unsigned threads) {
  config.validate();
  const ArrayGeometry geometry = config.geometry();
  const double theta = deg_to_rad(config.theta_deg);
  const std::size_t trials = config.trials;
  const std::size_t n_est = config.estimators.size();

  SweepResult result;
  for (BitDepth b : config.bits) {
    const QuantizerSpec spec(b);
    std::optional<Codebook> codebook;
    if (config.quantizer_mode == QuantizerMode::true_quantizer && !b.is_infinite()) {
      codebook = design_lloyd_max(b.bits());
    }

    for (double gamma_db : config.snr_grid_db) {
      const double signal_power = db_to_linear(gamma_db) * kNoiseFloor;
      const SourceSet sources = SourceSet::single(theta, signal_power);
      const double total_power = signal_power + kNoiseFloor;
      // Ideal AGC: scale by the analytic per-real-dimension standard deviation.
      const double input_scale = std::sqrt(total_power / 2.0);

      // errors[e * trials + t]: squared error of estimator e on trial t, or empty on failure.
      std::vector<std::optional<double>> errors(n_est * trials);
      parallel_for(trials, threads, [&](std::size_t t) {
        const std::uint64_t key = derive_stream_key(config.seed, t);
        SnapshotMatrix y = generate_snapshots(geometry, sources, kNoiseFloor, config.N, key);
        if (!b.is_infinite()) {
          y = codebook ? quantize_snapshots(y, *codebook, input_scale)
                       : aqnm_transform(y, spec, total_power, key);
        }
        const SubspaceDecomposition decomposition = decompose(sample_covariance(y), 1);
        for (std::size_t e = 0; e < n_est; ++e) {
          try {
            const DoaEstimate est = config.estimators[e] == DoaMethod::esprit
                                        ? esprit(decomposition, geometry)
                                        : root_music(decomposition, geometry);
            const double err = est.angles.front() - theta;
            errors[e * trials + t] = err * err;
          } catch (const EstimationError&) {
            errors[e * trials + t].reset();
          }
        }
      });

      for (std::size_t e = 0; e < n_est; ++e) {
        double sum = 0.0;
        std::uint64_t ok = 0;
        for (std::size_t t = 0; t < trials; ++t) {
          if (const auto& v = errors[e * trials + t]) {
            sum += *v;
            ++ok;
          }
        }
        SweepRow row;
        row.sweep_var = gamma_db;
        row.bits = b;
        row.estimator = std::string(to_string(config.estimators[e]));
        row.rmse_deg = ok ? rad_to_deg(std::sqrt(sum / static_cast<double>(ok)))
                          : std::numeric_limits<double>::quiet_NaN();
        row.crlb_sqrt_deg = crlb_sqrt_deg(config, b, gamma_db);
        row.eta_db = performance_loss_db(b, db_to_linear(gamma_db));
        row.trials = trials;
        row.failures = trials - ok;
        result.rows.push_back(std::move(row));
      }
    }
  }
  sort_rows(result.rows, config.estimators);
  return result;
}

}  // namespace qdoa
