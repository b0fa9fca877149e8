#include "prwpv/binomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace prwpv::binomial {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Relative size below which a tail term no longer changes the running sum.
constexpr double kNegligible = 1e-18;

// Stirling error: ln(n!) - [(n + 1/2) ln n - n + ln sqrt(2 pi)].
double stirlerr(std::int64_t n) {
  if (n <= 15) {
    // n! is exact in long double for n <= 15; the cancellation below costs
    // a few ulps of ~40, i.e. ~1e-17 absolute.
    long double fact = 1.0L;
    for (std::int64_t i = 2; i <= n; ++i) fact *= static_cast<long double>(i);
    const long double nn = static_cast<long double>(n);
    const long double half_log_two_pi =
        0.5L * std::log(2.0L * std::numbers::pi_v<long double>);
    return static_cast<double>(std::log(fact) - (nn + 0.5L) * std::log(nn) + nn -
                               half_log_two_pi);
  }
  constexpr double s0 = 1.0 / 12.0;
  constexpr double s1 = 1.0 / 360.0;
  constexpr double s2 = 1.0 / 1260.0;
  constexpr double s3 = 1.0 / 1680.0;
  constexpr double s4 = 1.0 / 1188.0;
  const double x = static_cast<double>(n);
  const double xx = x * x;
  return (s0 - (s1 - (s2 - (s3 - s4 / xx) / xx) / xx) / xx) / x;
}

// Deviance term x ln(x / m) + m - x, evaluated by series when x is close to m.
double bd0(double x, double m) {
  if (std::abs(x - m) < 0.1 * (x + m)) {
    const double v = (x - m) / (x + m);
    double s = (x - m) * v;
    double ej = 2.0 * x * v;
    const double vv = v * v;
    for (int j = 1; j < 1000; ++j) {
      ej *= vv;
      const double s1 = s + ej / static_cast<double>(2 * j + 1);
      if (s1 == s) return s1;
      s = s1;
    }
    return s;
  }
  return x * std::log(x / m) + m - x;
}

std::int64_t mode_of(const BinomialParams& params) {
  const double m = std::floor(static_cast<double>(params.n() + 1) * params.p());
  return std::clamp(static_cast<std::int64_t>(m), std::int64_t{0}, params.n());
}

// ln of sum_{j=lo..hi} pmf(j) for 0 <= lo <= hi <= n and 0 < p < 1.
// Anchors at the largest term in the range and walks outward with the
// ratio recurrence, so the sum is a streaming log-sum-exp whose terms all
// lie in (0, 1] relative to the anchor.
double log_range_mass(const BinomialParams& params, std::int64_t lo, std::int64_t hi) {
  const std::int64_t n = params.n();
  const double p = params.p();
  const double q = 1.0 - p;
  const std::int64_t anchor = std::clamp(mode_of(params), lo, hi);

  double sum = 1.0;
  double term = 1.0;
  // pmf(j-1) / pmf(j) = j q / ((n - j + 1) p)
  for (std::int64_t j = anchor; j > lo; --j) {
    term *= (static_cast<double>(j) * q) / (static_cast<double>(n - j + 1) * p);
    sum += term;
    if (term <= sum * kNegligible) break;
  }
  term = 1.0;
  // pmf(j+1) / pmf(j) = (n - j) p / ((j + 1) q)
  for (std::int64_t j = anchor; j < hi; ++j) {
    term *= (static_cast<double>(n - j) * p) / (static_cast<double>(j + 1) * q);
    sum += term;
    if (term <= sum * kNegligible) break;
  }
  return log_pmf(params, anchor) + std::log(sum);
}

}  // namespace

BinomialParams::BinomialParams(std::int64_t n, double p) : n_(n), p_(p) {
  if (n < 1) {
    throw std::domain_error("binomial: n must be >= 1, got " + std::to_string(n));
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("binomial: p must lie in [0, 1], got " + std::to_string(p));
  }
}

double log_pmf(const BinomialParams& params, std::int64_t k) {
  const std::int64_t n = params.n();
  const double p = params.p();
  if (k < 0 || k > n) {
    throw std::domain_error("binomial: k = " + std::to_string(k) + " outside [0, " +
                            std::to_string(n) + "]");
  }
  if (p == 0.0) return k == 0 ? 0.0 : kNegInf;
  if (p == 1.0) return k == n ? 0.0 : kNegInf;

  const double nd = static_cast<double>(n);
  if (k == 0) return nd * std::log1p(-p);
  if (k == n) return nd * std::log(p);

  const double kd = static_cast<double>(k);
  const double q = 1.0 - p;
  const double lc = stirlerr(n) - stirlerr(k) - stirlerr(n - k) - bd0(kd, nd * p) -
                    bd0(nd - kd, nd * q);
  const double lf = std::log(2.0 * std::numbers::pi) + std::log(kd) + std::log1p(-kd / nd);
  return lc - 0.5 * lf;
}

// The tail on the far side of the mode is summed directly; the side holding
// the mode (mass >= ~1/2) is its complement, so cdf(k) + sf(k + 1) == 1 to
// rounding and neither function is noisy near 1.
double log_cdf(const BinomialParams& params, std::int64_t k) {
  if (k < 0) return kNegInf;
  if (k >= params.n()) return 0.0;
  const double p = params.p();
  if (p == 0.0) return 0.0;
  if (p == 1.0) return kNegInf;
  if (k < mode_of(params)) return std::min(0.0, log_range_mass(params, 0, k));
  return std::log1p(-std::exp(log_range_mass(params, k + 1, params.n())));
}

double log_sf(const BinomialParams& params, std::int64_t t) {
  if (t <= 0) return 0.0;
  if (t > params.n()) return kNegInf;
  const double p = params.p();
  if (p == 0.0) return kNegInf;
  if (p == 1.0) return 0.0;
  if (t > mode_of(params)) return std::min(0.0, log_range_mass(params, t, params.n()));
  return std::log1p(-std::exp(log_range_mass(params, 0, t - 1)));
}

double cdf(const BinomialParams& params, std::int64_t k) {
  return std::exp(log_cdf(params, k));
}

double sf(const BinomialParams& params, std::int64_t t) {
  return std::exp(log_sf(params, t));
}

}  // namespace prwpv::binomial
