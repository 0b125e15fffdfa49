#ifndef QDOA_RNG_HPP
#define QDOA_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>

namespace qdoa {

// Counter-based 64-bit generator. Output k of a stream is a pure function of
// (key, k), so streams can be created anywhere without shared state and
// trial i always sees the same numbers regardless of scheduling.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key, std::uint64_t counter = 0) noexcept
      : key_(key), counter_(counter) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Key of the independent stream `index` under a master seed. Used both for
// per-trial streams and for sub-streams inside one trial.
std::uint64_t derive_stream_key(std::uint64_t seed, std::uint64_t index) noexcept;

// Circular complex Gaussian sampler: real and imaginary parts are independent
// normals of variance power/2 each.
class ComplexGaussian {
 public:
  explicit ComplexGaussian(double power)
      : normal_(0.0, std::sqrt(power / 2.0)) {}

  template <typename Rng>
  std::complex<double> operator()(Rng& rng) {
    const double re = normal_(rng);
    const double im = normal_(rng);
    return {re, im};
  }

 private:
  std::normal_distribution<double> normal_;
};

}  // namespace qdoa

#endif  // QDOA_RNG_HPP
