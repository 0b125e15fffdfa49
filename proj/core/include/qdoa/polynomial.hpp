#ifndef QDOA_POLYNOMIAL_HPP
#define QDOA_POLYNOMIAL_HPP

#include <complex>
#include <vector>

#include <Eigen/Core>

namespace qdoa {

// Roots of sum_k coeffs[k] z^k, as eigenvalues of the companion matrix of the
// monic (leading-coefficient normalized) polynomial. Leading zero
// coefficients are dropped; an all-zero or constant polynomial has no roots.
std::vector<std::complex<double>> polynomial_roots(const Eigen::VectorXcd& coeffs);

// Same roots by simultaneous Aberth-Ehrlich iteration, O(n^2) per sweep.
// Starts on the circle of radius |c_0 / c_n|^{1/n}; throws std::runtime_error
// if the iteration stalls.
std::vector<std::complex<double>> polynomial_roots_aberth(const Eigen::VectorXcd& coeffs,
                                                          int max_iterations = 500);

// Horner evaluation of sum_k coeffs[k] z^k.
std::complex<double> polynomial_value(const Eigen::VectorXcd& coeffs, std::complex<double> z);

}  // namespace qdoa

#endif  // QDOA_POLYNOMIAL_HPP
