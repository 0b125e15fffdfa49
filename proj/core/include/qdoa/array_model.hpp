#ifndef QDOA_ARRAY_MODEL_HPP
#define QDOA_ARRAY_MODEL_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "qdoa/bit_depth.hpp"

namespace qdoa {

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

constexpr double kPi = 3.14159265358979323846;

constexpr double deg_to_rad(double deg) noexcept { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) noexcept { return rad * 180.0 / kPi; }

// Where element m (1-based) sits relative to the reference point.
//   offset:    d_m = (m - M/2) d       (centroid at d/2)
//   symmetric: d_m = (m - (M+1)/2) d   (centroid at 0)
enum class PositionConvention { offset, symmetric };

// Uniform linear array. Lengths are in carrier wavelengths (lambda == 1).
class ArrayGeometry {
 public:
  explicit ArrayGeometry(int elements, double spacing = 0.5,
                         PositionConvention convention = PositionConvention::offset);

  int size() const noexcept { return static_cast<int>(positions_.size()); }
  double spacing() const noexcept { return spacing_; }
  double wavelength() const noexcept { return 1.0; }
  PositionConvention convention() const noexcept { return convention_; }
  std::span<const double> positions() const noexcept { return positions_; }

 private:
  double spacing_;
  PositionConvention convention_;
  std::vector<double> positions_;
};

// Uncorrelated far-field emitters. Angles in radians.
class SourceSet {
 public:
  SourceSet(std::vector<double> angles, std::vector<double> powers);

  static SourceSet single(double angle, double power) { return SourceSet({angle}, {power}); }

  std::size_t size() const noexcept { return angles_.size(); }
  std::span<const double> angles() const noexcept { return angles_; }
  std::span<const double> powers() const noexcept { return powers_; }
  double total_power() const noexcept;

 private:
  std::vector<double> angles_;
  std::vector<double> powers_;
};

// M x N snapshots; `quantized_bits` is empty until the data has passed an ADC.
struct SnapshotMatrix {
  CMatrix data;
  std::optional<BitDepth> quantized_bits;

  Eigen::Index elements() const noexcept { return data.rows(); }
  Eigen::Index snapshots() const noexcept { return data.cols(); }
  bool is_quantized() const noexcept { return quantized_bits.has_value(); }
};

// a(theta)_m = exp(j 2 pi d_m sin(theta) / lambda). Throws std::domain_error
// unless |theta| < pi/2.
CVector steering_vector(const ArrayGeometry& geometry, double theta);

// d a / d theta, entrywise j 2 pi (d_m / lambda) cos(theta) a_m.
CVector steering_derivative(const ArrayGeometry& geometry, double theta);

// Sum of squared element positions, in lambda^2.
double mean_square_aperture(const ArrayGeometry& geometry);

// Columns are sum_l a(theta_l) s_l(n) + w(n), with s_l ~ CN(0, p_l) and
// w ~ CN(0, noise_power I). Bit-identical for equal (inputs, seed).
SnapshotMatrix generate_snapshots(const ArrayGeometry& geometry, const SourceSet& sources,
                                  double noise_power, int snapshots, std::uint64_t seed);

// sum_l p_l a(theta_l) a(theta_l)^H + noise_power I.
CMatrix model_covariance(const ArrayGeometry& geometry, const SourceSet& sources,
                         double noise_power);

}  // namespace qdoa

#endif  // QDOA_ARRAY_MODEL_HPP
