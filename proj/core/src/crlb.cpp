#include "qdoa/crlb.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>

namespace qdoa {

OperatingPoint::OperatingPoint(ArrayGeometry geometry, double theta, double signal_power,
                               double noise_power, int snapshots, QuantizerSpec spec)
    : geometry_(std::move(geometry)),
      theta_(theta),
      signal_power_(signal_power),
      noise_power_(noise_power),
      snapshots_(snapshots),
      spec_(spec) {
  if (!(std::abs(theta) < kPi / 2.0)) throw std::domain_error("theta must lie in (-pi/2, pi/2)");
  if (!(signal_power > 0.0) || !(noise_power > 0.0)) {
    throw std::invalid_argument("signal and noise powers must be > 0");
  }
  if (snapshots < 1) throw std::invalid_argument("snapshot count must be >= 1");
}

double OperatingPoint::residual_noise() const noexcept {
  const double a = spec_.alpha();
  return a * a * noise_power_ + a * spec_.beta() * (signal_power_ + noise_power_);
}

double effective_snr(const OperatingPoint& point) {
  const double s = point.signal_power();
  return point.spec().alpha() * s / (point.spec().beta() * s + point.noise_power());
}

CMatrix quantized_covariance(const OperatingPoint& point) {
  const CVector a = steering_vector(point.geometry(), point.theta());
  const double a2 = point.spec().alpha() * point.spec().alpha();
  const Eigen::Index m = a.size();
  CMatrix r = CMatrix::Identity(m, m) * point.residual_noise();
  r.noalias() += (a2 * point.signal_power()) * (a * a.adjoint());
  return r;
}

CMatrix quantized_covariance_derivative(const OperatingPoint& point) {
  const CVector a = steering_vector(point.geometry(), point.theta());
  const CVector da = steering_derivative(point.geometry(), point.theta());
  const double scale = point.spec().alpha() * point.spec().alpha() * point.signal_power();
  CMatrix d = da * a.adjoint();
  d += CMatrix(d.adjoint());
  return scale * d;
}

double fim_numeric(const OperatingPoint& point) {
  const CMatrix r = quantized_covariance(point);
  const CMatrix dr = quantized_covariance_derivative(point);
  Eigen::LLT<CMatrix> llt(r);
  if (llt.info() != Eigen::Success) throw std::domain_error("covariance is singular");
  const CMatrix w = llt.solve(dr);  // R^-1 R'
  // Tr{W W} without forming the product.
  return (w.cwiseProduct(w.transpose())).sum().real();
}

double fim_closed_form(const OperatingPoint& point) {
  const double k = 2.0 * kPi / point.geometry().wavelength();
  const double c = std::cos(point.theta());
  return 2.0 * effective_snr(point) * k * k * c * c * mean_square_aperture(point.geometry());
}

double crlb(const OperatingPoint& point) {
  return 1.0 / (static_cast<double>(point.snapshots()) * fim_closed_form(point));
}

double crlb_exact(const OperatingPoint& point) {
  return 1.0 / (static_cast<double>(point.snapshots()) * fim_numeric(point));
}

double performance_loss_db(BitDepth bits, double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("input SNR must be > 0");
  const double beta = distortion_factor(bits);
  // log1p keeps precision when beta is tiny.
  return 10.0 / std::log(10.0) * (std::log1p(beta * gamma) - std::log1p(-beta));
}

}  // namespace qdoa
