#ifndef QDOA_BIT_DEPTH_HPP
#define QDOA_BIT_DEPTH_HPP

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qdoa {

// ADC resolution: a positive bit count or the infinite-resolution sentinel.
class BitDepth {
 public:
  explicit BitDepth(int bits) : bits_(bits) {
    if (bits <= 0) throw std::invalid_argument("bit depth must be >= 1, got " + std::to_string(bits));
  }

  static BitDepth infinite() noexcept { return BitDepth(); }

  bool is_infinite() const noexcept { return bits_ == 0; }

  // Precondition: !is_infinite().
  int bits() const {
    if (is_infinite()) throw std::logic_error("infinite bit depth has no finite bit count");
    return bits_;
  }

  // "inf" or the decimal bit count.
  std::string to_string() const { return is_infinite() ? "inf" : std::to_string(bits_); }

  // Accepts "inf", "infinity" or a positive integer.
  static BitDepth parse(std::string_view text);

  friend bool operator==(BitDepth a, BitDepth b) noexcept { return a.bits_ == b.bits_; }

  // Infinite resolution sorts after every finite depth.
  friend std::strong_ordering operator<=>(BitDepth a, BitDepth b) noexcept {
    if (a.is_infinite() || b.is_infinite()) {
      return static_cast<int>(a.is_infinite()) <=> static_cast<int>(b.is_infinite());
    }
    return a.bits_ <=> b.bits_;
  }

 private:
  BitDepth() noexcept : bits_(0) {}
  int bits_;
};

}  // namespace qdoa

#endif  // QDOA_BIT_DEPTH_HPP
