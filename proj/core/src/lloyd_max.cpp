#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "qdoa/quantizer.hpp"

namespace qdoa {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * kPi);

double normal_pdf(double x) { return std::isinf(x) ? 0.0 : kInvSqrt2Pi * std::exp(-0.5 * x * x); }

// Probability mass of [a, b] under N(0, 1), accurate in both tails.
double normal_mass(double a, double b) {
  if (a >= 0.0) return 0.5 * (std::erfc(a * kInvSqrt2) - std::erfc(b * kInvSqrt2));
  if (b <= 0.0) return 0.5 * (std::erfc(-b * kInvSqrt2) - std::erfc(-a * kInvSqrt2));
  return 1.0 - 0.5 * std::erfc(-a * kInvSqrt2) - 0.5 * std::erfc(b * kInvSqrt2);
}

double edge_term(double x) { return std::isinf(x) ? 0.0 : x * normal_pdf(x); }

struct Cell {
  double mass;
  double first;   // integral of x phi(x)
  double second;  // integral of x^2 phi(x)
};

Cell cell_moments(double a, double b) {
  const double mass = normal_mass(a, b);
  return {mass, normal_pdf(a) - normal_pdf(b), mass + edge_term(a) - edge_term(b)};
}

double lower_edge(std::span<const double> t, std::size_t k) { return k == 0 ? -kInf : t[k - 1]; }
double upper_edge(std::span<const double> t, std::size_t k) {
  return k == t.size() ? kInf : t[k];
}

std::vector<double> midpoints(const std::vector<double>& levels) {
  std::vector<double> t(levels.size() - 1);
  for (std::size_t k = 0; k + 1 < levels.size(); ++k) t[k] = 0.5 * (levels[k] + levels[k + 1]);
  return t;
}

std::vector<double> centroids(const std::vector<double>& thresholds) {
  std::vector<double> c(thresholds.size() + 1);
  for (std::size_t k = 0; k < c.size(); ++k) {
    const Cell cell = cell_moments(lower_edge(thresholds, k), upper_edge(thresholds, k));
    c[k] = cell.first / cell.mass;
  }
  return c;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

bool strictly_increasing(const std::vector<double>& v) {
  return std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end();
}

// Newton step on F(y) = G(y) - y where G is the centroid map composed with the
// midpoint rule. The Jacobian of G is tridiagonal.
std::vector<double> newton_step(const std::vector<double>& levels,
                                const std::vector<double>& update) {
  const std::size_t n = levels.size();
  const std::vector<double> t = midpoints(levels);
  std::vector<double> sub(n, 0.0), diag(n, 0.0), sup(n, 0.0), rhs(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double a = lower_edge(t, k);
    const double b = upper_edge(t, k);
    const double mass = normal_mass(a, b);
    const double c = update[k];
    const double d_lower = k == 0 ? 0.0 : normal_pdf(a) * (c - a) / mass;
    const double d_upper = k + 1 == n ? 0.0 : normal_pdf(b) * (b - c) / mass;
    sub[k] = 0.5 * d_lower;
    sup[k] = 0.5 * d_upper;
    diag[k] = 0.5 * (d_lower + d_upper) - 1.0;
    rhs[k] = -(update[k] - levels[k]);
  }
  // Thomas algorithm.
  for (std::size_t k = 1; k < n; ++k) {
    const double w = sub[k] / diag[k - 1];
    diag[k] -= w * sup[k - 1];
    rhs[k] -= w * rhs[k - 1];
  }
  std::vector<double> next(n);
  std::vector<double> delta(n);
  delta[n - 1] = rhs[n - 1] / diag[n - 1];
  for (std::size_t k = n - 1; k-- > 0;) delta[k] = (rhs[k] - sup[k] * delta[k + 1]) / diag[k];
  for (std::size_t k = 0; k < n; ++k) next[k] = levels[k] + delta[k];
  return next;
}

}  // namespace

double gaussian_distortion(std::span<const double> levels, std::span<const double> thresholds) {
  if (levels.size() != thresholds.size() + 1) {
    throw std::invalid_argument("codebook needs exactly one more level than thresholds");
  }
  double mse = 0.0;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const Cell cell = cell_moments(lower_edge(thresholds, k), upper_edge(thresholds, k));
    const double y = levels[k];
    mse += cell.second - 2.0 * y * cell.first + y * y * cell.mass;
  }
  return mse;
}

double gaussian_distortion(const Codebook& codebook) {
  return gaussian_distortion(codebook.levels, codebook.thresholds);
}

Codebook design_lloyd_max(int bits, double tolerance, int max_iterations) {
  if (bits < 1 || bits > 10) {
    throw std::invalid_argument("Lloyd-Max design supports 1..10 bits, got " + std::to_string(bits));
  }
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");

  const std::size_t count = std::size_t{1} << bits;
  const boost::math::normal_distribution<double> standard;

  // Start from the Gaussian quantiles of the equal-probability cell midpoints.
  std::vector<double> levels(count);
  for (std::size_t k = 0; k < count; ++k) {
    levels[k] = boost::math::quantile(standard, (static_cast<double>(k) + 0.5) /
                                                    static_cast<double>(count));
  }

  int iteration = 0;
  bool converged = false;
  while (iteration < max_iterations) {
    ++iteration;
    const std::vector<double> update = centroids(midpoints(levels));
    const double residual = max_abs_diff(update, levels);

    // Plain Lloyd contracts very slowly for large codebooks; take the Newton
    // step whenever it keeps the levels ordered and shrinks the residual.
    std::vector<double> next = update;
    if (count > 1) {
      std::vector<double> trial = newton_step(levels, update);
      if (strictly_increasing(trial)) {
        const double trial_residual = max_abs_diff(centroids(midpoints(trial)), trial);
        if (trial_residual < residual) next = std::move(trial);
      }
    }

    const double movement = max_abs_diff(next, levels);
    levels = std::move(next);
    if (movement < tolerance) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw ConvergenceError("Lloyd-Max design for " + std::to_string(bits) +
                           " bits did not converge in " + std::to_string(max_iterations) +
                           " iterations");
  }

  // Odd symmetry holds analytically; remove the rounding residue.
  for (std::size_t k = 0; k < count / 2; ++k) {
    const double v = 0.5 * (levels[count - 1 - k] - levels[k]);
    levels[k] = -v;
    levels[count - 1 - k] = v;
  }

  Codebook book;
  book.bits = bits;
  book.thresholds = midpoints(levels);
  book.thresholds[count / 2 - 1] = 0.0;
  book.levels = std::move(levels);
  book.iterations = iteration;
  return book;
}

}  // namespace qdoa
