#pragma once

#include <cstdint>
#include <random>

namespace jex {

/// Seedable random stream. All library sampling consumes uniforms through
/// this wrapper so that a seed fully determines every draw, independent of
/// the platform's std::uniform_real_distribution.
///
/// The engine is std::mt19937_64; uniforms take 53 high bits per draw.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1), 53-bit resolution.
  double u01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on the open interval (0, 1). Used for inversion sampling so
  /// that generalized inverses are never evaluated at exactly 0 or 1.
  double u01_open() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace jex
