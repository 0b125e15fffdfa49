#include "qdoa/experiment_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace qdoa {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <typename Int>
Int parse_integer(std::string_view key, std::string_view text) {
  Int value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("invalid integer for '" + std::string(key) + "': '" + std::string(text) + "'");
  }
  return value;
}

double parse_number(std::string_view key, std::string_view text) {
  try {
    return parse_double(text);
  } catch (const std::invalid_argument&) {
    throw ConfigError("invalid number for '" + std::string(key) + "': '" + std::string(text) + "'");
  }
}

template <typename T, typename F>
std::string join(const std::vector<T>& items, F&& fmt) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ',';
    out += fmt(items[i]);
  }
  return out;
}

}  // namespace

std::string_view to_string(QuantizerMode mode) noexcept {
  return mode == QuantizerMode::aqnm ? "aqnm" : "true_quantizer";
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::vector<double> parse_snr_grid(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw ConfigError("empty SNR grid");
  if (text.find(':') != std::string_view::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw ConfigError("SNR range must be start:step:stop");
    const double start = parse_number("snr_grid_db", parts[0]);
    const double step = parse_number("snr_grid_db", parts[1]);
    const double stop = parse_number("snr_grid_db", parts[2]);
    if (!(step > 0.0) || stop < start) throw ConfigError("SNR range needs step > 0 and stop >= start");
    std::vector<double> grid;
    for (long k = 0;; ++k) {
      const double v = start + static_cast<double>(k) * step;
      if (v > stop + 1e-9 * step) break;
      grid.push_back(v);
    }
    return grid;
  }
  std::vector<double> grid;
  for (auto p : split(text, ',')) grid.push_back(parse_number("snr_grid_db", p));
  return grid;
}

std::vector<BitDepth> parse_bits_list(std::string_view text) {
  std::vector<BitDepth> bits;
  for (auto p : split(trim(text), ',')) {
    try {
      bits.push_back(BitDepth::parse(p));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  return bits;
}

std::vector<DoaMethod> parse_estimator_list(std::string_view text) {
  std::vector<DoaMethod> methods;
  for (auto p : split(trim(text), ',')) {
    if (p == "root_music" || p == "root-music") {
      methods.push_back(DoaMethod::root_music);
    } else if (p == "esprit") {
      methods.push_back(DoaMethod::esprit);
    } else {
      throw ConfigError("unknown estimator '" + std::string(p) + "' (expected root_music, esprit)");
    }
  }
  return methods;
}

void ExperimentConfig::validate() const {
  if (!(std::abs(theta_deg) < 90.0)) throw ConfigError("theta_deg must lie in (-90, 90)");
  if (M < 2) throw ConfigError("M must be >= 2");
  if (!(d_in_wavelengths > 0.0) || d_in_wavelengths > 0.5) {
    throw ConfigError("d_in_wavelengths must lie in (0, 0.5]");
  }
  if (N < 1) throw ConfigError("N must be >= 1");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (bits.empty()) throw ConfigError("bits list is empty");
  if (snr_grid_db.empty()) throw ConfigError("SNR grid is empty");
  for (double g : snr_grid_db) {
    if (!std::isfinite(g)) throw ConfigError("SNR grid values must be finite");
  }
  if (estimators.empty()) throw ConfigError("estimator list is empty");
  if (quantizer_mode == QuantizerMode::true_quantizer) {
    for (BitDepth b : bits) {
      if (!b.is_infinite() && b.bits() > 10) {
        throw ConfigError("true quantizer supports up to 10 bits; use the aqnm mode above that");
      }
    }
  }
}

std::string format_config(const ExperimentConfig& c, bool include_output) {
  std::ostringstream os;
  os << "theta_deg=" << format_double(c.theta_deg) << '\n'
     << "M=" << c.M << '\n'
     << "d_in_wavelengths=" << format_double(c.d_in_wavelengths) << '\n'
     << "N=" << c.N << '\n'
     << "trials=" << c.trials << '\n'
     << "seed=" << c.seed << '\n'
     << "bits=" << join(c.bits, [](BitDepth b) { return b.to_string(); }) << '\n'
     << "snr_grid_db=" << join(c.snr_grid_db, [](double v) { return format_double(v); }) << '\n'
     << "estimators="
     << join(c.estimators, [](DoaMethod m) { return std::string(to_string(m)); }) << '\n'
     << "quantizer_mode=" << to_string(c.quantizer_mode) << '\n'
     << "position_convention="
     << (c.position_convention == PositionConvention::symmetric ? "symmetric" : "offset") << '\n';
  if (include_output) os << "output=" << c.output << '\n';
  return os.str();
}

void apply_config_value(ExperimentConfig& c, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "theta_deg") {
    c.theta_deg = parse_number(key, value);
  } else if (key == "M") {
    c.M = parse_integer<int>(key, value);
  } else if (key == "d_in_wavelengths") {
    c.d_in_wavelengths = parse_number(key, value);
  } else if (key == "N") {
    c.N = parse_integer<int>(key, value);
  } else if (key == "trials") {
    c.trials = parse_integer<std::uint64_t>(key, value);
  } else if (key == "seed") {
    c.seed = parse_integer<std::uint64_t>(key, value);
  } else if (key == "bits") {
    c.bits = parse_bits_list(value);
  } else if (key == "snr_grid_db") {
    c.snr_grid_db = parse_snr_grid(value);
  } else if (key == "estimators") {
    c.estimators = parse_estimator_list(value);
  } else if (key == "quantizer_mode") {
    if (value == "true_quantizer") {
      c.quantizer_mode = QuantizerMode::true_quantizer;
    } else if (value == "aqnm") {
      c.quantizer_mode = QuantizerMode::aqnm;
    } else {
      throw ConfigError("quantizer_mode must be true_quantizer or aqnm");
    }
  } else if (key == "position_convention") {
    if (value == "offset") {
      c.position_convention = PositionConvention::offset;
    } else if (value == "symmetric") {
      c.position_convention = PositionConvention::symmetric;
    } else {
      throw ConfigError("position_convention must be offset or symmetric");
    }
  } else if (key == "output") {
    c.output = std::string(value);
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

ExperimentConfig parse_config(std::string_view text, ExperimentConfig base) {
  std::size_t line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
    }
    apply_config_value(base, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return base;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), std::move(base));
}

}  // namespace qdoa
