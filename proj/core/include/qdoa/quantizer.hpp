#ifndef QDOA_QUANTIZER_HPP
#define QDOA_QUANTIZER_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "qdoa/array_model.hpp"
#include "qdoa/bit_depth.hpp"

namespace qdoa {

// Normalized MSE beta = E|y - y_q|^2 / E|y|^2 of the MSE-optimal b-bit scalar
// quantizer for Gaussian input. Tabulated for b <= 5, (sqrt(3) pi / 2) 2^{-2b}
// above, and 0 for infinite resolution.
double distortion_factor(BitDepth bits);

// Linearized ADC: y_q = alpha y + w_q with alpha = 1 - beta.
class QuantizerSpec {
 public:
  explicit QuantizerSpec(BitDepth bits)
      : bits_(bits), beta_(distortion_factor(bits)), alpha_(1.0 - beta_) {}

  static QuantizerSpec unquantized() { return QuantizerSpec(BitDepth::infinite()); }

  BitDepth bits() const noexcept { return bits_; }
  double beta() const noexcept { return beta_; }
  double alpha() const noexcept { return alpha_; }

 private:
  BitDepth bits_;
  double beta_;
  double alpha_;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Scalar quantizer for a unit-variance real input.
struct Codebook {
  int bits = 0;
  std::vector<double> levels;      // 2^b, increasing
  std::vector<double> thresholds;  // 2^b - 1, thresholds[k] separates levels k and k+1
  int iterations = 0;              // fixed-point iterations spent in design

  // Reproduction value of the cell containing x.
  double quantize(double x) const;
};

// MSE of an arbitrary (levels, thresholds) pair under a standard normal input.
double gaussian_distortion(std::span<const double> levels, std::span<const double> thresholds);
double gaussian_distortion(const Codebook& codebook);

// Lloyd-Max design for N(0, 1). Stops once the largest level update is below
// `tolerance`; throws ConvergenceError after `max_iterations`.
Codebook design_lloyd_max(int bits, double tolerance = 1e-10, int max_iterations = 100000);

// Quantizes real and imaginary parts separately:
// out = input_scale * Q(in / input_scale).
SnapshotMatrix quantize_snapshots(const SnapshotMatrix& y, const Codebook& codebook,
                                  double input_scale);

// alpha y + w_q, w_q ~ CN(0, alpha beta total_input_power I).
SnapshotMatrix aqnm_transform(const SnapshotMatrix& y, const QuantizerSpec& spec,
                              double total_input_power, std::uint64_t seed);

// Covariance of the additive quantization noise. Diagonal under the
// white-input simplification, so only the diagonal is stored.
struct NoiseCovariance {
  Eigen::VectorXd diagonal;

  CMatrix matrix() const { return diagonal.cast<std::complex<double>>().asDiagonal(); }
};

NoiseCovariance quantization_noise_covariance(const SourceSet& sources, double noise_power,
                                              const ArrayGeometry& geometry,
                                              const QuantizerSpec& spec);

// White floor of the post-ADC covariance:
// alpha^2 noise_power + alpha beta (sum of source powers + noise_power).
double residual_noise_power(const SourceSet& sources, double noise_power,
                            const QuantizerSpec& spec);

// E[y_q y_q^H] = sum_l alpha^2 p_l a_l a_l^H + residual_noise_power I.
CMatrix quantized_covariance(const ArrayGeometry& geometry, const SourceSet& sources,
                             double noise_power, const QuantizerSpec& spec);

}  // namespace qdoa

#endif  // QDOA_QUANTIZER_HPP
