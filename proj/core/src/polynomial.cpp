#include "qdoa/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace qdoa {

std::vector<std::complex<double>> polynomial_roots(const Eigen::VectorXcd& coeffs) {
  Eigen::Index degree = coeffs.size() - 1;
  while (degree > 0 && coeffs(degree) == std::complex<double>(0.0, 0.0)) --degree;
  if (degree < 1) return {};

  // Companion matrix in upper Hessenberg form: first row holds the negated
  // normalized coefficients, ones on the subdiagonal.
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(degree, degree);
  const std::complex<double> lead = coeffs(degree);
  for (Eigen::Index k = 0; k < degree; ++k) {
    companion(0, k) = -coeffs(degree - 1 - k) / lead;
  }
  for (Eigen::Index k = 1; k < degree; ++k) companion(k, k - 1) = 1.0;

  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(companion, false);
  if (schur.info() != Eigen::Success) {
    throw std::runtime_error("companion-matrix eigenvalue iteration did not converge");
  }
  const auto& t = schur.matrixT();
  std::vector<std::complex<double>> roots(static_cast<std::size_t>(degree));
  for (Eigen::Index k = 0; k < degree; ++k) roots[static_cast<std::size_t>(k)] = t(k, k);
  return roots;
}

std::complex<double> polynomial_value(const Eigen::VectorXcd& coeffs, std::complex<double> z) {
  std::complex<double> acc{0.0, 0.0};
  for (Eigen::Index k = coeffs.size(); k-- > 0;) acc = acc * z + coeffs(k);
  return acc;
}

namespace {

// p(z) / p'(z). Outside the unit disk the reversed polynomial in 1/z is used
// so high powers of |z| cannot overflow.
std::complex<double> newton_ratio(const Eigen::VectorXcd& c, Eigen::Index n, std::complex<double> z) {
  using cd = std::complex<double>;
  if (std::abs(z) <= 1.0) {
    cd p = c(n);
    cd dp{0.0, 0.0};
    for (Eigen::Index k = n; k-- > 0;) {
      dp = dp * z + p;
      p = p * z + c(k);
    }
    return p / dp;
  }
  // q(w) = sum_k c_k w^{n-k}, w = 1/z, p(z) = z^n q(w);
  // p'/p = n/z - w^2 q'(w)/q(w).
  const cd w = 1.0 / z;
  cd q = c(0);
  cd dq{0.0, 0.0};
  for (Eigen::Index k = 1; k <= n; ++k) {
    dq = dq * w + q;
    q = q * w + c(k);
  }
  const cd log_derivative = static_cast<double>(n) * w - w * w * dq / q;
  return 1.0 / log_derivative;
}

}  // namespace

std::vector<std::complex<double>> polynomial_roots_aberth(const Eigen::VectorXcd& coeffs,
                                                          int max_iterations) {
  using cd = std::complex<double>;
  Eigen::Index degree = coeffs.size() - 1;
  while (degree > 0 && coeffs(degree) == cd(0.0, 0.0)) --degree;
  if (degree < 1) return {};

  // Zero roots factor out exactly.
  Eigen::Index zeros = 0;
  while (zeros < degree && coeffs(zeros) == cd(0.0, 0.0)) ++zeros;
  const Eigen::Index n = degree - zeros;
  const Eigen::VectorXcd c = coeffs.segment(zeros, n + 1);

  std::vector<cd> roots(static_cast<std::size_t>(n));
  const double radius = std::pow(std::abs(c(0)) / std::abs(c(n)), 1.0 / static_cast<double>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    const double angle = 6.283185307179586 * static_cast<double>(k) / static_cast<double>(n) + 0.4;
    roots[static_cast<std::size_t>(k)] = std::polar(radius, angle);
  }

  std::vector<bool> done(static_cast<std::size_t>(n), false);
  std::size_t remaining = roots.size();
  constexpr double kEps = 4.0 * std::numeric_limits<double>::epsilon();
  for (int it = 0; it < max_iterations && remaining > 0; ++it) {
    for (std::size_t k = 0; k < roots.size(); ++k) {
      if (done[k]) continue;
      const cd z = roots[k];
      const cd ratio = newton_ratio(c, n, z);
      cd repulsion{0.0, 0.0};
      for (std::size_t j = 0; j < roots.size(); ++j) {
        if (j != k) repulsion += 1.0 / (z - roots[j]);
      }
      const cd step = ratio / (1.0 - ratio * repulsion);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
        // Landed on a critical point or on another estimate; nudge off it.
        roots[k] = z * cd(1.0, 1e-7) + cd(1e-12, 0.0);
        continue;
      }
      roots[k] = z - step;
      if (std::abs(step) <= kEps * std::max(std::abs(roots[k]), 1e-300)) {
        done[k] = true;
        --remaining;
      }
    }
  }
  if (remaining > 0) {
    // Multiple roots converge only linearly and stall at a rounding-level
    // step; keep them if the Newton correction is small.
    for (std::size_t k = 0; k < roots.size(); ++k) {
      if (done[k]) continue;
      const cd ratio = newton_ratio(c, n, roots[k]);
      if (!(std::abs(ratio) <= 1e-6 * std::max(std::abs(roots[k]), 1.0))) {
        throw std::runtime_error("Aberth iteration did not converge");
      }
    }
  }
  roots.insert(roots.end(), static_cast<std::size_t>(zeros), cd(0.0, 0.0));
  return roots;
}

}  // namespace qdoa
