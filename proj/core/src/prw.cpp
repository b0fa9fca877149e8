#include "prwpv/prw.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "prwpv/binomial.hpp"

namespace prwpv {

namespace {

void require_mean_open_unit(double R, const char* what) {
  if (!(R > 0.0 && R < 1.0)) {
    throw std::domain_error(std::string(what) + " must lie in (0, 1), got " +
                            std::to_string(R));
  }
}

void require_positive_n(std::int64_t n) {
  if (n < 1) throw std::domain_error("n must be >= 1, got " + std::to_string(n));
}

// Integer that x snaps onto, or ceil(x).
double snapped_ceil(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) <= kSnapTolerance * std::max(1.0, std::abs(x))) return r;
  return std::ceil(x);
}

bool snaps_onto(double x, double target) {
  return std::abs(x - target) <= kSnapTolerance * std::max(1.0, std::abs(x));
}

// a - b is a positive gap, not snap noise
bool clearly_above(double a, double b, double gap) {
  return gap > kSnapTolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

TestSpec::TestSpec(std::int64_t n, double alpha) : n_(n), alpha_(alpha) {
  require_positive_n(n);
  require_mean_open_unit(alpha, "alpha");
}

std::int64_t gamma_r(std::int64_t n, double R) {
  require_positive_n(n);
  require_mean_open_unit(R, "R");
  const auto r = static_cast<std::int64_t>(snapped_ceil(static_cast<double>(n) * R));
  return std::clamp(r, std::int64_t{1}, n);
}

std::int64_t ceil_scaled(std::int64_t n, double t) {
  return static_cast<std::int64_t>(snapped_ceil(static_cast<double>(n) * t));
}

double upper_tail_bound(std::int64_t n, double p, std::int64_t t) {
  require_positive_n(n);
  require_mean_open_unit(p, "p");
  const double nd = static_cast<double>(n);
  const double td = static_cast<double>(t);
  const double denom = std::fma(-nd, p, td);  // t - n p
  if (!clearly_above(td, nd * p, denom) || t > n) {
    throw std::domain_error("upper_tail_bound: need n*p < t <= n, got t = " +
                            std::to_string(t));
  }
  const double numer = std::fma(-td, p, td);  // t - t p
  return numer / denom * binomial::sf(binomial::BinomialParams(n, p), t);
}

double lower_tail_factor(std::int64_t n, double R, std::int64_t k) {
  require_positive_n(n);
  require_mean_open_unit(R, "R");
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  const double denom = std::fma(nd, R, -kd);  // n R - k
  if (k < 0 || !clearly_above(nd * R, kd, denom)) {
    throw std::domain_error("lower_tail_bound: need 0 <= k < n*R, got k = " +
                            std::to_string(k));
  }
  return R * (nd - kd) / denom;
}

double lower_tail_bound(std::int64_t n, double R, std::int64_t k) {
  const double factor = lower_tail_factor(n, R, k);
  return factor * binomial::cdf(binomial::BinomialParams(n, R), k);
}

GBoundContext::GBoundContext(std::int64_t n, double R)
    : n_(n), R_(R), gamma_(gamma_r(n, R)),
      t_max_(static_cast<double>(gamma_ - 1) / static_cast<double>(n)) {}

double GBoundContext::step_value(std::int64_t k) const {
  if (k < 0 || k > last_step()) {
    throw std::domain_error("g: step " + std::to_string(k) + " outside [0, " +
                            std::to_string(last_step()) + "]");
  }
  const double bound = lower_tail_bound(n_, R_, k);
  return k == last_step() ? std::max(1.0, bound) : bound;
}

double g(double t, const GBoundContext& ctx) {
  if (!(t >= 0.0)) throw std::domain_error("g: t must be >= 0, got " + std::to_string(t));
  const double x = static_cast<double>(ctx.n()) * t;
  const std::int64_t k = ceil_scaled(ctx.n(), t);
  if (k > ctx.last_step()) {
    throw std::domain_error("g: t = " + std::to_string(t) + " beyond t_max = " +
                            std::to_string(ctx.t_max()));
  }
  if (k == ctx.last_step() && snaps_onto(x, static_cast<double>(k))) {
    return ctx.step_value(k);
  }
  return lower_tail_bound(ctx.n(), ctx.R(), k);
}

double g_inverse(double delta, const GBoundContext& ctx) {
  if (std::isnan(delta)) throw std::domain_error("g_inverse: delta is NaN");
  std::int64_t best = -1;
  for (std::int64_t k = 0; k <= ctx.last_step(); ++k) {
    if (ctx.step_value(k) > delta) break;
    best = k;
  }
  if (best < 0) {
    throw std::domain_error("g_inverse: no t in [0, t_max] with g(t) <= " +
                            std::to_string(delta));
  }
  return static_cast<double>(best) / static_cast<double>(ctx.n());
}

double prw_pvalue(double rhat, const TestSpec& spec, Reporting reporting) {
  if (!(rhat >= 0.0 && rhat <= 1.0)) {
    throw std::domain_error("prw_pvalue: rhat must lie in [0, 1], got " +
                            std::to_string(rhat));
  }
  const GBoundContext ctx(spec.n(), spec.alpha());
  const double value = g(std::min(rhat, ctx.t_max()), ctx);
  return reporting == Reporting::clamped ? std::min(1.0, value) : value;
}

}  // namespace prwpv
