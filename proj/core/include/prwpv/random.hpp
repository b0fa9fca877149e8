#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace prwpv::random {

/// SplitMix64 (Steele, Lea, Flood). Used only to expand seeds.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) noexcept : state_(state) {}

  std::uint64_t next() noexcept;

 private:
  std::uint64_t state_;
};

/// xoshiro256** 1.0 (Blackman, Vigna). Satisfies UniformRandomBitGenerator.
class Xoshiro256StarStar {
 public:
  using result_type = std::uint64_t;

  /// State filled from four SplitMix64 outputs of `seed`.
  explicit Xoshiro256StarStar(std::uint64_t seed) noexcept;

  /// Raw state; must not be all zero.
  static Xoshiro256StarStar from_state(const std::array<std::uint64_t, 4>& state) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

 private:
  Xoshiro256StarStar() = default;

  std::array<std::uint64_t, 4> s_{};
};

/// Independent stream for replication `index` under master `seed`.
///
/// The stream depends only on (seed, index), so a replication produces the
/// same draws whichever thread or chunk runs it.
Xoshiro256StarStar stream_for(std::uint64_t seed, std::uint64_t index) noexcept;

/// Uniform double in [0, 1) from the top 53 bits.
double uniform01(Xoshiro256StarStar& gen) noexcept;

/// Uniform double in (0, 1).
double uniform_open01(Xoshiro256StarStar& gen) noexcept;

/// Standard normal via the Marsaglia polar method (second variate dropped).
double standard_normal(Xoshiro256StarStar& gen) noexcept;

/// Gamma(shape, 1) via Marsaglia-Tsang; shape < 1 uses the
/// Gamma(shape + 1) * U^(1/shape) boost. Requires shape > 0.
double gamma(Xoshiro256StarStar& gen, double shape) noexcept;

/// Beta(a, b) as Ga / (Ga + Gb).
double beta(Xoshiro256StarStar& gen, double a, double b) noexcept;

}  // namespace prwpv::random
