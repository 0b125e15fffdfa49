#include "qdoa/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qdoa/polynomial.hpp"

namespace qdoa {

namespace {

// Roots this close outside the unit circle are numerically on it; double
// roots of an exact covariance can split tangentially by ~sqrt(eps).
constexpr double kCircleSlack = 1e-9;
// Two selected roots closer than this are one split double root.
constexpr double kDuplicateRoot = 1e-6;

void require_uniform_half_wavelength(const ArrayGeometry& geometry) {
  if (geometry.spacing() > 0.5 * geometry.wavelength() + 1e-15) {
    throw std::invalid_argument("subspace rooting needs element spacing <= lambda/2");
  }
}

// Maps a phase increment between adjacent elements to an angle, clamping the
// arcsin argument into the open domain.
double phase_to_angle(double phase, const ArrayGeometry& geometry, bool& clamped) {
  double u = phase * geometry.wavelength() / (2.0 * kPi * geometry.spacing());
  const double limit = std::nextafter(1.0, 0.0);
  if (std::abs(u) > limit) {
    clamped = clamped || std::abs(u) > 1.0;
    u = std::copysign(limit, u);
  }
  return std::asin(u);
}

}  // namespace

std::string_view to_string(DoaMethod method) noexcept {
  switch (method) {
    case DoaMethod::music: return "music";
    case DoaMethod::root_music: return "root_music";
    case DoaMethod::esprit: return "esprit";
  }
  return "unknown";
}

CMatrix sample_covariance(const CMatrix& snapshots) {
  if (snapshots.cols() < 1) throw std::invalid_argument("sample covariance needs N >= 1");
  CMatrix r(snapshots.rows(), snapshots.rows());
  r.setZero();
  r.selfadjointView<Eigen::Lower>().rankUpdate(snapshots, 1.0 / static_cast<double>(snapshots.cols()));
  r.triangularView<Eigen::StrictlyUpper>() = r.adjoint();
  return r;
}

CMatrix sample_covariance(const SnapshotMatrix& snapshots) {
  return sample_covariance(snapshots.data);
}

SubspaceDecomposition decompose(const CMatrix& covariance, int sources) {
  const Eigen::Index m = covariance.rows();
  if (covariance.cols() != m) throw std::invalid_argument("covariance must be square");
  if (sources < 1 || sources >= m) {
    throw std::invalid_argument("source count must satisfy 1 <= L < M (L=" +
                                std::to_string(sources) + ", M=" + std::to_string(m) + ")");
  }
  const double scale = covariance.cwiseAbs().maxCoeff();
  if ((covariance - covariance.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * std::max(scale, 1e-300)) {
    throw std::invalid_argument("covariance is not Hermitian");
  }

  Eigen::SelfAdjointEigenSolver<CMatrix> solver(covariance);
  if (solver.info() != Eigen::Success) {
    throw EstimationError("Hermitian eigendecomposition failed");
  }
  // Eigen returns ascending eigenvalues; flip to descending.
  const Eigen::VectorXd values = solver.eigenvalues().reverse();
  const CMatrix vectors = solver.eigenvectors().rowwise().reverse();

  SubspaceDecomposition out;
  out.eigenvalues = values;
  out.signal_basis = vectors.leftCols(sources);
  out.noise_basis = vectors.rightCols(m - sources);
  const double gap = values(sources - 1) - values(sources);
  out.degenerate = gap <= 1e-12 * std::max(std::abs(values(0)), 1e-300);
  return out;
}

std::vector<double> angle_grid(double step_deg) {
  if (!(step_deg > 0.0) || step_deg >= 90.0) throw std::invalid_argument("grid step must be in (0, 90)");
  const auto half = static_cast<long>(std::ceil(90.0 / step_deg)) - 1;
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(2 * half + 1));
  for (long k = -half; k <= half; ++k) grid.push_back(deg_to_rad(static_cast<double>(k) * step_deg));
  return grid;
}

std::vector<double> music_pseudospectrum(const SubspaceDecomposition& decomposition,
                                         const ArrayGeometry& geometry,
                                         std::span<const double> grid) {
  if (decomposition.noise_basis.cols() == 0) {
    throw std::invalid_argument("pseudospectrum needs a non-empty noise subspace");
  }
  if (decomposition.noise_basis.rows() != geometry.size()) {
    throw std::invalid_argument("decomposition and geometry disagree on M");
  }
  constexpr std::size_t kBlock = 256;
  std::vector<double> spectrum(grid.size());
  CMatrix steering(geometry.size(), static_cast<Eigen::Index>(kBlock));
  for (std::size_t start = 0; start < grid.size(); start += kBlock) {
    const std::size_t count = std::min(kBlock, grid.size() - start);
    for (std::size_t i = 0; i < count; ++i) {
      steering.col(static_cast<Eigen::Index>(i)) = steering_vector(geometry, grid[start + i]);
    }
    const CMatrix proj =
        decomposition.noise_basis.adjoint() * steering.leftCols(static_cast<Eigen::Index>(count));
    for (std::size_t i = 0; i < count; ++i) {
      spectrum[start + i] = 1.0 / proj.col(static_cast<Eigen::Index>(i)).squaredNorm();
    }
  }
  return spectrum;
}

DoaEstimate music(const SubspaceDecomposition& decomposition, const ArrayGeometry& geometry,
                  std::span<const double> grid) {
  const std::vector<double> s = music_pseudospectrum(decomposition, geometry, grid);
  std::vector<std::size_t> peaks;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const bool left = i == 0 || s[i] >= s[i - 1];
    const bool right = i + 1 == s.size() || s[i] > s[i + 1];
    if (left && right) peaks.push_back(i);
  }
  const auto l = static_cast<std::size_t>(decomposition.sources());
  if (peaks.size() < l) {
    throw EstimationError("pseudospectrum has " + std::to_string(peaks.size()) +
                          " peaks, need " + std::to_string(l));
  }
  std::partial_sort(peaks.begin(), peaks.begin() + static_cast<long>(l), peaks.end(),
                    [&](std::size_t a, std::size_t b) { return s[a] > s[b]; });
  peaks.resize(l);
  std::sort(peaks.begin(), peaks.end());

  DoaEstimate est;
  est.method = DoaMethod::music;
  est.degenerate = decomposition.degenerate;
  for (std::size_t i : peaks) {
    est.angles.push_back(grid[i]);
    est.diagnostics.emplace_back(s[i], 0.0);
  }
  return est;
}

Eigen::VectorXcd root_music_polynomial(const CMatrix& noise_projector) {
  const Eigen::Index m = noise_projector.rows();
  Eigen::VectorXcd coeffs(2 * m - 1);
  for (Eigen::Index k = 0; k < m; ++k) {
    const std::complex<double> sum = noise_projector.diagonal(k).sum();
    coeffs(m - 1 + k) = sum;
    // C is Hermitian, so subdiagonal sums are the conjugates; set them exactly
    // so the root set is closed under z -> 1/conj(z).
    coeffs(m - 1 - k) = std::conj(sum);
  }
  coeffs(m - 1) = std::complex<double>(coeffs(m - 1).real(), 0.0);
  return coeffs;
}

DoaEstimate root_music(const SubspaceDecomposition& decomposition, const ArrayGeometry& geometry,
                       RootingMethod rooting) {
  require_uniform_half_wavelength(geometry);
  const CMatrix projector = decomposition.noise_basis * decomposition.noise_basis.adjoint();
  const Eigen::VectorXcd poly = root_music_polynomial(projector);
  std::vector<std::complex<double>> roots;
  try {
    roots = rooting == RootingMethod::companion ? polynomial_roots(poly)
                                                : polynomial_roots_aberth(poly);
  } catch (const std::runtime_error& e) {
    throw EstimationError(std::string("root finding failed: ") + e.what());
  }

  std::vector<std::complex<double>> inside;
  for (const auto& z : roots) {
    if (std::abs(z) < 1.0 + kCircleSlack) inside.push_back(z);
  }
  std::sort(inside.begin(), inside.end(),
            [](const auto& a, const auto& b) { return std::abs(a) > std::abs(b); });

  const auto l = static_cast<std::size_t>(decomposition.sources());
  std::vector<std::complex<double>> chosen;
  for (const auto& z : inside) {
    if (chosen.size() == l) break;
    const bool duplicate = std::any_of(chosen.begin(), chosen.end(), [&](const auto& c) {
      return std::abs(c - z) < kDuplicateRoot;
    });
    if (!duplicate) chosen.push_back(z);
  }
  if (chosen.size() < l) {
    throw EstimationError("only " + std::to_string(chosen.size()) +
                          " polynomial roots inside the unit circle, need " + std::to_string(l));
  }

  DoaEstimate est;
  est.method = DoaMethod::root_music;
  est.degenerate = decomposition.degenerate;
  std::vector<std::pair<double, std::complex<double>>> pairs;
  for (const auto& z : chosen) {
    pairs.emplace_back(phase_to_angle(std::arg(z), geometry, est.clamped), z);
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [theta, z] : pairs) {
    est.angles.push_back(theta);
    est.diagnostics.emplace_back(std::abs(z), 0.0);
  }
  return est;
}

DoaEstimate root_music(const CMatrix& covariance, int sources, const ArrayGeometry& geometry,
                       RootingMethod rooting) {
  return root_music(decompose(covariance, sources), geometry, rooting);
}

DoaEstimate esprit(const SubspaceDecomposition& decomposition, const ArrayGeometry& geometry) {
  require_uniform_half_wavelength(geometry);
  const Eigen::Index m = decomposition.signal_basis.rows();
  const Eigen::Index l = decomposition.sources();
  if (l >= m - 1) throw std::invalid_argument("ESPRIT needs L < M - 1");

  const CMatrix upper = decomposition.signal_basis.topRows(m - 1);
  const CMatrix lower = decomposition.signal_basis.bottomRows(m - 1);
  Eigen::JacobiSVD<CMatrix> svd(upper, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv(l - 1) <= 1e-10 * std::max(sv(0), 1e-300)) {
    throw EstimationError("ESPRIT subarray basis is rank deficient");
  }
  const CMatrix rotation = svd.solve(lower);

  Eigen::ComplexEigenSolver<CMatrix> eig(rotation, false);
  if (eig.info() != Eigen::Success) throw EstimationError("ESPRIT rotation eigensolver failed");

  DoaEstimate est;
  est.method = DoaMethod::esprit;
  est.degenerate = decomposition.degenerate;
  std::vector<std::pair<double, std::complex<double>>> pairs;
  for (Eigen::Index k = 0; k < l; ++k) {
    const std::complex<double> phi = eig.eigenvalues()(k);
    pairs.emplace_back(phase_to_angle(std::arg(phi), geometry, est.clamped), phi);
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [theta, phi] : pairs) {
    est.angles.push_back(theta);
    est.diagnostics.push_back(phi);
  }
  return est;
}

DoaEstimate esprit(const CMatrix& covariance, int sources, const ArrayGeometry& geometry) {
  return esprit(decompose(covariance, sources), geometry);
}

}  // namespace qdoa
