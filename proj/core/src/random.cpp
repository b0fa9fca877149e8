#include "prwpv/random.hpp"

#include <cmath>

namespace prwpv::random {

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
  return (x << k) | (x >> (64 - k));
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t SplitMix64::next() noexcept {
  state_ += kGolden;
  return mix64(state_);
}

Xoshiro256StarStar::Xoshiro256StarStar(std::uint64_t seed) noexcept {
  SplitMix64 sm(seed);
  for (auto& word : s_) word = sm.next();
}

Xoshiro256StarStar Xoshiro256StarStar::from_state(
    const std::array<std::uint64_t, 4>& state) noexcept {
  Xoshiro256StarStar gen;
  gen.s_ = state;
  return gen;
}

Xoshiro256StarStar::result_type Xoshiro256StarStar::operator()() noexcept {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

Xoshiro256StarStar stream_for(std::uint64_t seed, std::uint64_t index) noexcept {
  return Xoshiro256StarStar(mix64(seed) ^ mix64(index * kGolden + 1));
}

double uniform01(Xoshiro256StarStar& gen) noexcept {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

double uniform_open01(Xoshiro256StarStar& gen) noexcept {
  return (static_cast<double>(gen() >> 12) + 0.5) * 0x1.0p-52;
}

double standard_normal(Xoshiro256StarStar& gen) noexcept {
  for (;;) {
    const double u = 2.0 * uniform01(gen) - 1.0;
    const double v = 2.0 * uniform01(gen) - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

double gamma(Xoshiro256StarStar& gen, double shape) noexcept {
  if (shape < 1.0) {
    const double u = uniform_open01(gen);
    return gamma(gen, shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = standard_normal(gen);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform_open01(gen);
    const double xx = x * x;
    if (u < 1.0 - 0.0331 * xx * xx) return d * v;
    if (std::log(u) < 0.5 * xx + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double beta(Xoshiro256StarStar& gen, double a, double b) noexcept {
  const double x = gamma(gen, a);
  const double y = gamma(gen, b);
  return x / (x + y);
}

}  // namespace prwpv::random
