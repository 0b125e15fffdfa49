#ifndef QDOA_CRLB_HPP
#define QDOA_CRLB_HPP

#include "qdoa/array_model.hpp"
#include "qdoa/quantizer.hpp"

namespace qdoa {

// Single emitter observed through a b-bit ADC array. Multi-source bounds are
// not modelled; this type only carries one angle and one power.
class OperatingPoint {
 public:
  OperatingPoint(ArrayGeometry geometry, double theta, double signal_power, double noise_power,
                 int snapshots, QuantizerSpec spec);

  const ArrayGeometry& geometry() const noexcept { return geometry_; }
  double theta() const noexcept { return theta_; }
  double signal_power() const noexcept { return signal_power_; }
  double noise_power() const noexcept { return noise_power_; }
  int snapshots() const noexcept { return snapshots_; }
  const QuantizerSpec& spec() const noexcept { return spec_; }

  // Input SNR gamma = signal_power / noise_power.
  double input_snr() const noexcept { return signal_power_ / noise_power_; }

  // White floor alpha^2 sigma_w^2 + alpha beta (sigma_s^2 + sigma_w^2).
  double residual_noise() const noexcept;

 private:
  ArrayGeometry geometry_;
  double theta_;
  double signal_power_;
  double noise_power_;
  int snapshots_;
  QuantizerSpec spec_;
};

// alpha sigma_s^2 / (beta sigma_s^2 + sigma_w^2).
double effective_snr(const OperatingPoint& point);

// Post-ADC covariance alpha^2 sigma_s^2 a a^H + residual_noise I.
CMatrix quantized_covariance(const OperatingPoint& point);

// dR/dtheta = alpha^2 sigma_s^2 (a' a^H + a a'^H).
CMatrix quantized_covariance_derivative(const OperatingPoint& point);

// Per-snapshot Fisher information Tr{R^-1 R' R^-1 R'} by explicit matrix
// algebra. Throws std::domain_error if R is singular.
double fim_numeric(const OperatingPoint& point);

// 2 gamma_q (2 pi / lambda)^2 cos^2(theta) sum_m d_m^2.
double fim_closed_form(const OperatingPoint& point);

// 1 / (N fim_closed_form), radians squared.
double crlb(const OperatingPoint& point);

// 1 / (N fim_numeric), radians squared.
double crlb_exact(const OperatingPoint& point);

// 10 log10((1 + beta gamma) / alpha): CRLB inflation of a b-bit array over an
// infinite-resolution one at input SNR gamma (linear).
double performance_loss_db(BitDepth bits, double gamma);

}  // namespace qdoa

#endif  // QDOA_CRLB_HPP
