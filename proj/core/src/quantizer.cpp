#include "qdoa/quantizer.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <string>

#include "qdoa/rng.hpp"

namespace qdoa {

namespace {

// MSE-optimal non-uniform quantizer distortion for Gaussian input, b = 1..5.
constexpr std::array<double, 5> kTabulatedBeta = {0.3634, 0.1175, 0.03454, 0.009497, 0.002499};

}  // namespace

BitDepth BitDepth::parse(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return BitDepth::infinite();
  int value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw std::invalid_argument("invalid bit depth '" + std::string(text) + "'");
  }
  return BitDepth(value);
}

double distortion_factor(BitDepth bits) {
  if (bits.is_infinite()) return 0.0;
  const int b = bits.bits();
  if (b <= static_cast<int>(kTabulatedBeta.size())) {
    return kTabulatedBeta[static_cast<std::size_t>(b - 1)];
  }
  return std::sqrt(3.0) * kPi / 2.0 * std::ldexp(1.0, -2 * b);
}

double Codebook::quantize(double x) const {
  const auto it = std::upper_bound(thresholds.begin(), thresholds.end(), x);
  return levels[static_cast<std::size_t>(it - thresholds.begin())];
}

SnapshotMatrix quantize_snapshots(const SnapshotMatrix& y, const Codebook& codebook,
                                  double input_scale) {
  if (!(input_scale > 0.0)) throw std::invalid_argument("quantizer input scale must be > 0");
  if (codebook.levels.size() != codebook.thresholds.size() + 1 || codebook.levels.empty()) {
    throw std::invalid_argument("malformed codebook");
  }
  SnapshotMatrix out{y.data, BitDepth(codebook.bits)};
  const double inv = 1.0 / input_scale;
  for (auto& v : out.data.reshaped()) {
    v = {input_scale * codebook.quantize(v.real() * inv),
         input_scale * codebook.quantize(v.imag() * inv)};
  }
  return out;
}

SnapshotMatrix aqnm_transform(const SnapshotMatrix& y, const QuantizerSpec& spec,
                              double total_input_power, std::uint64_t seed) {
  if (!(total_input_power > 0.0)) throw std::invalid_argument("total input power must be > 0");
  SnapshotMatrix out{y.data, spec.bits()};
  if (spec.bits().is_infinite()) return out;

  out.data *= spec.alpha();
  CounterRng rng(derive_stream_key(seed, 1));
  ComplexGaussian draw(spec.alpha() * spec.beta() * total_input_power);
  for (auto& v : out.data.reshaped()) v += draw(rng);
  return out;
}

double residual_noise_power(const SourceSet& sources, double noise_power,
                            const QuantizerSpec& spec) {
  const double a = spec.alpha();
  return a * a * noise_power + a * spec.beta() * (sources.total_power() + noise_power);
}

NoiseCovariance quantization_noise_covariance(const SourceSet& sources, double noise_power,
                                              const ArrayGeometry& geometry,
                                              const QuantizerSpec& spec) {
  const double level = spec.alpha() * spec.beta() * (sources.total_power() + noise_power);
  return {Eigen::VectorXd::Constant(geometry.size(), level)};
}

CMatrix quantized_covariance(const ArrayGeometry& geometry, const SourceSet& sources,
                             double noise_power, const QuantizerSpec& spec) {
  const double a2 = spec.alpha() * spec.alpha();
  const Eigen::Index m = geometry.size();
  CMatrix r = CMatrix::Identity(m, m) * residual_noise_power(sources, noise_power, spec);
  for (std::size_t l = 0; l < sources.size(); ++l) {
    const CVector a = steering_vector(geometry, sources.angles()[l]);
    r.noalias() += (a2 * sources.powers()[l]) * (a * a.adjoint());
  }
  return r;
}

}  // namespace qdoa
