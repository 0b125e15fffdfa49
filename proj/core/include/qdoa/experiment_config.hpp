#ifndef QDOA_EXPERIMENT_CONFIG_HPP
#define QDOA_EXPERIMENT_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qdoa/array_model.hpp"
#include "qdoa/bit_depth.hpp"
#include "qdoa/estimators.hpp"

namespace qdoa {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class QuantizerMode { true_quantizer, aqnm };

std::string_view to_string(QuantizerMode mode) noexcept;

// One simulation campaign. Defaults reproduce the reference scenario:
// theta = 15 deg, M = 128, d = lambda/2, N = 32, 8000 trials.
struct ExperimentConfig {
  double theta_deg = 15.0;
  int M = 128;
  double d_in_wavelengths = 0.5;
  int N = 32;
  std::uint64_t trials = 8000;
  std::uint64_t seed = 1;
  std::vector<BitDepth> bits{BitDepth(2), BitDepth(3)};
  std::vector<double> snr_grid_db = {-10, -8, -6, -4, -2, 0, 2, 4, 6, 8, 10, 12, 14, 16, 18, 20};
  std::vector<DoaMethod> estimators{DoaMethod::root_music, DoaMethod::esprit};
  QuantizerMode quantizer_mode = QuantizerMode::true_quantizer;
  PositionConvention position_convention = PositionConvention::offset;
  std::string output = "-";  // "-" is stdout

  ArrayGeometry geometry() const { return ArrayGeometry(M, d_in_wavelengths, position_convention); }

  // Throws ConfigError on out-of-range values.
  void validate() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// "key=value" lines in field order. With include_output == false the
// `output` key is left out (used for the CSV comment header, so the same
// experiment written to two paths yields identical files).
std::string format_config(const ExperimentConfig& config, bool include_output = true);

// Applies "key=value" lines on top of `base`. Blank lines and lines starting
// with '#' are ignored; unknown keys and malformed values throw ConfigError.
ExperimentConfig parse_config(std::string_view text, ExperimentConfig base = {});

// Applies a single key/value pair; shared by the file parser and CLI flags.
void apply_config_value(ExperimentConfig& config, std::string_view key, std::string_view value);

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {});

// "start:step:stop" (inclusive) or a comma-separated list.
std::vector<double> parse_snr_grid(std::string_view text);
std::vector<BitDepth> parse_bits_list(std::string_view text);
std::vector<DoaMethod> parse_estimator_list(std::string_view text);

// Shortest decimal text that parses back to exactly `value`; "nan"/"inf"
// for non-finite values.
std::string format_double(double value);
double parse_double(std::string_view text);

}  // namespace qdoa

#endif  // QDOA_EXPERIMENT_CONFIG_HPP
