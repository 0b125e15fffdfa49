#include "qdoa/array_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "qdoa/rng.hpp"

namespace qdoa {

namespace {

void require_in_domain(double theta) {
  if (!(std::abs(theta) < kPi / 2.0)) {
    throw std::domain_error("angle " + std::to_string(theta) +
                            " rad is outside the open interval (-pi/2, pi/2)");
  }
}

}  // namespace

ArrayGeometry::ArrayGeometry(int elements, double spacing, PositionConvention convention)
    : spacing_(spacing), convention_(convention) {
  if (elements < 1) throw std::invalid_argument("array needs at least one element");
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw std::invalid_argument("element spacing must be positive and finite");
  }
  const double centre = convention == PositionConvention::offset
                            ? static_cast<double>(elements) / 2.0
                            : (static_cast<double>(elements) + 1.0) / 2.0;
  positions_.resize(static_cast<std::size_t>(elements));
  for (int m = 1; m <= elements; ++m) {
    positions_[static_cast<std::size_t>(m - 1)] = (static_cast<double>(m) - centre) * spacing;
  }
}

SourceSet::SourceSet(std::vector<double> angles, std::vector<double> powers)
    : angles_(std::move(angles)), powers_(std::move(powers)) {
  if (angles_.empty()) throw std::invalid_argument("source set is empty");
  if (angles_.size() != powers_.size()) {
    throw std::invalid_argument("source angles and powers differ in length");
  }
  for (double theta : angles_) require_in_domain(theta);
  for (double p : powers_) {
    if (!(p > 0.0) || !std::isfinite(p)) throw std::invalid_argument("source power must be > 0");
  }
  std::vector<double> sorted = angles_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("source angles must be pairwise distinct");
  }
}

double SourceSet::total_power() const noexcept {
  return std::accumulate(powers_.begin(), powers_.end(), 0.0);
}

CVector steering_vector(const ArrayGeometry& geometry, double theta) {
  require_in_domain(theta);
  const auto pos = geometry.positions();
  const double k = 2.0 * kPi * std::sin(theta) / geometry.wavelength();
  CVector a(geometry.size());
  for (Eigen::Index m = 0; m < a.size(); ++m) {
    a(m) = std::polar(1.0, k * pos[static_cast<std::size_t>(m)]);
  }
  return a;
}

CVector steering_derivative(const ArrayGeometry& geometry, double theta) {
  CVector a = steering_vector(geometry, theta);
  const auto pos = geometry.positions();
  const double k = 2.0 * kPi * std::cos(theta) / geometry.wavelength();
  for (Eigen::Index m = 0; m < a.size(); ++m) {
    a(m) *= std::complex<double>(0.0, k * pos[static_cast<std::size_t>(m)]);
  }
  return a;
}

double mean_square_aperture(const ArrayGeometry& geometry) {
  double sum = 0.0;
  for (double d : geometry.positions()) sum += d * d;
  return sum;
}

SnapshotMatrix generate_snapshots(const ArrayGeometry& geometry, const SourceSet& sources,
                                  double noise_power, int snapshots, std::uint64_t seed) {
  if (snapshots < 1) throw std::invalid_argument("snapshot count must be >= 1");
  if (!(noise_power >= 0.0)) throw std::invalid_argument("noise power must be >= 0");

  const Eigen::Index m_count = geometry.size();
  const std::size_t l_count = sources.size();

  CMatrix steering(m_count, static_cast<Eigen::Index>(l_count));
  for (std::size_t l = 0; l < l_count; ++l) {
    steering.col(static_cast<Eigen::Index>(l)) = steering_vector(geometry, sources.angles()[l]);
  }

  CounterRng rng(derive_stream_key(seed, 0));
  std::vector<ComplexGaussian> signal_draw;
  signal_draw.reserve(l_count);
  for (double p : sources.powers()) signal_draw.emplace_back(p);
  ComplexGaussian noise_draw(noise_power);

  SnapshotMatrix out{CMatrix(m_count, snapshots), std::nullopt};
  CVector s(static_cast<Eigen::Index>(l_count));
  for (int n = 0; n < snapshots; ++n) {
    for (std::size_t l = 0; l < l_count; ++l) {
      s(static_cast<Eigen::Index>(l)) = signal_draw[l](rng);
    }
    auto column = out.data.col(n);
    column.noalias() = steering * s;
    if (noise_power > 0.0) {
      for (Eigen::Index m = 0; m < m_count; ++m) column(m) += noise_draw(rng);
    }
  }
  return out;
}

CMatrix model_covariance(const ArrayGeometry& geometry, const SourceSet& sources,
                         double noise_power) {
  const Eigen::Index m_count = geometry.size();
  CMatrix r = CMatrix::Identity(m_count, m_count) * noise_power;
  for (std::size_t l = 0; l < sources.size(); ++l) {
    const CVector a = steering_vector(geometry, sources.angles()[l]);
    r.noalias() += sources.powers()[l] * (a * a.adjoint());
  }
  return r;
}

}  // namespace qdoa
