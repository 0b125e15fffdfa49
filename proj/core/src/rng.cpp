#include "qdoa/rng.hpp"

namespace qdoa {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

CounterRng::result_type CounterRng::operator()() noexcept {
  // Two rounds so that adjacent counters under adjacent keys decorrelate.
  return mix64(key_ ^ mix64(counter_++));
}

std::uint64_t derive_stream_key(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(mix64(seed) ^ (index * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL));
}

}  // namespace qdoa
