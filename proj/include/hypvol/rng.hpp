#pragma once

#include <array>
#include <cstdint>

namespace hypvol {

/// Philox4x32-10 block function.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key);

/// Counter-based stream keyed by (seed, stream); the draw index is the counter.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);

  std::uint32_t next_u32();
  /// Uniform in the open interval (0, 1) with 53 random bits.
  double uniform();
  double normal();
  /// Gamma(shape, 1), shape > 0.
  double gamma(double shape);

  std::uint64_t draws() const { return counter_; }

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  std::array<std::uint32_t, 4> block_{};
  int used_ = 4;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace hypvol
