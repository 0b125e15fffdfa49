#ifndef QDOA_ESTIMATORS_HPP
#define QDOA_ESTIMATORS_HPP

#include <complex>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "qdoa/array_model.hpp"

namespace qdoa {

// Raised when a subspace estimator cannot produce L angles from its input
// (too few roots inside the unit circle, rank-deficient ESPRIT subarray).
class EstimationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class DoaMethod { music, root_music, esprit };

// How root_music finds the zeros of its polynomial. Both return every root;
// the companion route is the slower dense-eigenvalue reference.
enum class RootingMethod { aberth, companion };

std::string_view to_string(DoaMethod method) noexcept;

struct DoaEstimate {
  std::vector<double> angles;  // radians, ascending
  DoaMethod method = DoaMethod::root_music;
  // Moduli of the selected roots (root_music), rotation eigenvalues (esprit)
  // or spectrum peak values (music).
  std::vector<std::complex<double>> diagnostics;
  bool clamped = false;     // some |arg z| lambda / (2 pi d) exceeded 1
  bool degenerate = false;  // eigenvalue tie at the signal/noise boundary
};

struct SubspaceDecomposition {
  CMatrix signal_basis;         // M x L
  CMatrix noise_basis;          // M x (M - L)
  Eigen::VectorXd eigenvalues;  // descending
  bool degenerate = false;

  Eigen::Index sources() const noexcept { return signal_basis.cols(); }
};

// (1/N) Y Y^H.
CMatrix sample_covariance(const CMatrix& snapshots);
CMatrix sample_covariance(const SnapshotMatrix& snapshots);

// Eigendecomposition with the L dominant eigenvectors as signal subspace.
// Requires 1 <= L < M and a Hermitian R. Ties between eigenvalue L and L+1 set
// `degenerate`; the split then follows the solver's ordering.
SubspaceDecomposition decompose(const CMatrix& covariance, int sources);

// ||U_N^H a(theta)||^{-2} at each grid angle (radians).
std::vector<double> music_pseudospectrum(const SubspaceDecomposition& decomposition,
                                         const ArrayGeometry& geometry,
                                         std::span<const double> grid);

// Uniform grid over the open interval (-90, 90) degrees, returned in radians.
std::vector<double> angle_grid(double step_deg = 0.01);

// Spectral MUSIC: the L highest local maxima of the pseudospectrum on `grid`.
DoaEstimate music(const SubspaceDecomposition& decomposition, const ArrayGeometry& geometry,
                  std::span<const double> grid);

// Coefficients (ascending powers, length 2M - 1) of
// z^{M-1} p^T(1/z) C p(z), p(z) = [1, z, ..., z^{M-1}]^T: coefficient M-1+k
// is the sum of the k-th superdiagonal of C.
Eigen::VectorXcd root_music_polynomial(const CMatrix& noise_projector);

// Selects the L roots inside the unit circle with the largest modulus and maps
// arg(z) to theta = asin(lambda arg(z) / (2 pi d)). Roots within 1e-9 outside
// the circle count as inside, and roots closer than 1e-6 to an already
// selected one are treated as the same (split) double root.
DoaEstimate root_music(const SubspaceDecomposition& decomposition, const ArrayGeometry& geometry,
                       RootingMethod rooting = RootingMethod::aberth);
DoaEstimate root_music(const CMatrix& covariance, int sources, const ArrayGeometry& geometry,
                       RootingMethod rooting = RootingMethod::aberth);

// Least-squares ESPRIT on the two maximally overlapping (M-1)-element subarrays.
DoaEstimate esprit(const SubspaceDecomposition& decomposition, const ArrayGeometry& geometry);
DoaEstimate esprit(const CMatrix& covariance, int sources, const ArrayGeometry& geometry);

}  // namespace qdoa

#endif  // QDOA_ESTIMATORS_HPP
