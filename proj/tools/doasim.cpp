#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qdoa/qdoa.hpp"

namespace {

enum ExitCode { kOk = 0, kConfigError = 1, kRuntimeError = 2, kIoError = 3 };

struct CommonFlags {
  std::optional<std::string> config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::uint64_t> trials;
  std::optional<std::string> bits;
  std::optional<std::string> snr_db;
  std::optional<std::string> estimators;
  bool aqnm = false;
  bool symmetric = false;
  unsigned threads = 0;
  double grid_step_deg = 0.01;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "Key=value config file (fields of ExperimentConfig)");
  cmd->add_option("--seed", f.seed, "Master seed");
  cmd->add_option("--out", f.out, "Output CSV path, '-' for stdout");
  cmd->add_option("--trials", f.trials, "Monte Carlo trials per grid point");
  cmd->add_option("--bits", f.bits, "Comma-separated bit depths, 'inf' for unquantized");
  cmd->add_option("--snr-db", f.snr_db, "SNR grid: start:step:stop or comma list");
  cmd->add_option("--estimators", f.estimators, "Comma list of root_music, esprit");
  cmd->add_flag("--aqnm", f.aqnm, "Additive quantization noise model instead of a real quantizer");
  cmd->add_flag("--symmetric-array", f.symmetric, "Element positions centered on the array midpoint");
}

qdoa::ExperimentConfig defaults_for(const std::string& command) {
  qdoa::ExperimentConfig c;
  if (command == "loss-vs-bits") {
    c.bits = qdoa::parse_bits_list("1,2,3,4,5,6,7,8,9,10");
    c.snr_grid_db = qdoa::parse_snr_grid("-20:10:20");
  } else if (command == "loss-vs-snr") {
    c.bits = qdoa::parse_bits_list("1,2,3,4,5");
    c.snr_grid_db = qdoa::parse_snr_grid("-20:1:20");
  } else if (command == "crlb-table") {
    c.bits = qdoa::parse_bits_list("1,2,3,4,5,inf");
    c.snr_grid_db = qdoa::parse_snr_grid("-20:5:20");
  } else if (command == "spectrum") {
    c.bits = qdoa::parse_bits_list("3");
    c.snr_grid_db = {0.0};
  }
  return c;
}

qdoa::ExperimentConfig resolve_config(const std::string& command, const CommonFlags& f) {
  qdoa::ExperimentConfig c = defaults_for(command);
  if (f.config_path) c = qdoa::load_config(*f.config_path, c);
  if (f.seed) c.seed = *f.seed;
  if (f.out) c.output = *f.out;
  if (f.trials) c.trials = *f.trials;
  if (f.bits) qdoa::apply_config_value(c, "bits", *f.bits);
  if (f.snr_db) qdoa::apply_config_value(c, "snr_grid_db", *f.snr_db);
  if (f.estimators) qdoa::apply_config_value(c, "estimators", *f.estimators);
  if (f.aqnm) c.quantizer_mode = qdoa::QuantizerMode::aqnm;
  if (f.symmetric) c.position_convention = qdoa::PositionConvention::symmetric;
  c.validate();
  return c;
}

void run(const std::string& command, const CommonFlags& f) {
  const qdoa::ExperimentConfig c = resolve_config(command, f);
  std::string csv;
  if (command == "loss-vs-bits") {
    csv = qdoa::sweep_to_csv(qdoa::run_loss_factor_vs_bits(c), &c);
  } else if (command == "loss-vs-snr") {
    csv = qdoa::sweep_to_csv(qdoa::run_loss_factor_vs_snr(c), &c);
  } else if (command == "rmse-vs-snr") {
    csv = qdoa::sweep_to_csv(qdoa::run_rmse_vs_snr(c, f.threads), &c);
  } else if (command == "spectrum") {
    csv = qdoa::spectrum_to_csv(qdoa::run_spectrum(c, f.grid_step_deg), &c);
  } else {
    csv = qdoa::crlb_table_to_csv(qdoa::run_crlb_table(c), &c);
  }
  qdoa::write_text_file(c.output, csv);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Direction-of-arrival simulator for low-resolution ADC arrays"};
  app.require_subcommand(1);

  CommonFlags flags;
  const std::pair<const char*, const char*> commands[] = {
      {"loss-vs-bits", "Performance loss factor against bit depth"},
      {"loss-vs-snr", "Performance loss factor against input SNR"},
      {"rmse-vs-snr", "Monte Carlo RMSE of the estimators with the CRLB overlay"},
      {"spectrum", "MUSIC pseudospectrum of one simulated realization"},
      {"crlb-table", "Closed-form and exact CRLB for each bit depth and SNR"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* cmd = app.add_subcommand(name, help);
    add_common_flags(cmd, flags);
    if (std::string(name) == "rmse-vs-snr") {
      cmd->add_option("--threads", flags.threads, "Worker threads, 0 = all cores");
    }
    if (std::string(name) == "spectrum") {
      cmd->add_option("--grid-step-deg", flags.grid_step_deg, "Angle grid step in degrees")
          ->check(CLI::PositiveNumber);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    run(command, flags);
  } catch (const qdoa::ConfigError& e) {
    std::cerr << "doasim: config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const qdoa::IoError& e) {
    std::cerr << "doasim: I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "doasim: config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "doasim: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kOk;
}
