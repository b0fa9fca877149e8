#pragma once

#include <cstdint>

namespace prwpv {

/// Relative tolerance used to snap n*t onto an integer before taking a
/// ceiling. Empirical risks j/n land a few ulps off the grid in floating
/// point; without the snap the step index would shift by one.
inline constexpr double kSnapTolerance = 1e-9;

/// Whether a p-value is reported capped at 1 or as the raw bound.
enum class Reporting { clamped, raw };

/// Context of the one-sided test H0: R > alpha vs H1: R <= alpha on n
/// losses bounded in [0, 1]. Throws std::domain_error unless n >= 1 and
/// 0 < alpha < 1.
class TestSpec {
 public:
  TestSpec(std::int64_t n, double alpha);

  std::int64_t n() const noexcept { return n_; }
  double alpha() const noexcept { return alpha_; }

 private:
  std::int64_t n_;
  double alpha_;
};

/// Smallest natural r with r >= n*R, with n*R snapped onto an integer
/// when within kSnapTolerance. Always in [1, n]. Throws std::domain_error
/// unless 0 < R < 1.
std::int64_t gamma_r(std::int64_t n, double R);

/// ceil(n*t) with the integer snap: if n*t is within
/// kSnapTolerance * max(1, n*t) of an integer, that integer is returned.
std::int64_t ceil_scaled(std::int64_t n, double t);

/// Upper-tail inequality for i.i.d. [0,1] variables with mean p:
///   P(sum X_i >= t) <= (t - t p) / (t - n p) * P(Bin(n,p) >= t),
/// valid for integers n p < t <= n. The value is a bound, not a
/// probability, and may exceed 1. Throws std::domain_error outside that
/// range.
double upper_tail_bound(std::int64_t n, double p, std::int64_t t);

/// Lower-tail counterpart, for integers 0 <= k < n R:
///   P(sum L_i <= k) <= R (n - k) / (n R - k) * P(Bin(n,R) <= k).
/// Throws std::domain_error outside that range.
double lower_tail_bound(std::int64_t n, double R, std::int64_t k);

/// The multiplier R (n - k) / (n R - k) of lower_tail_bound.
double lower_tail_factor(std::int64_t n, double R, std::int64_t k);

/// The step-function bound g(t; R) on P(Rhat <= t) together with the
/// quantities that fix its domain [0, t_max], t_max = (gamma(R) - 1) / n.
///
/// g is left-continuous and constant on each interval ((k-1)/n, k/n]; its
/// value there is lower_tail_bound(n, R, k). At the right edge t_max the
/// value is raised to max{1, lower_tail_bound(n, R, gamma - 1)}, which is
/// what makes the derived p-value super-uniform.
class GBoundContext {
 public:
  /// Throws std::domain_error unless n >= 1 and 0 < R < 1.
  GBoundContext(std::int64_t n, double R);

  std::int64_t n() const noexcept { return n_; }
  double R() const noexcept { return R_; }
  std::int64_t gamma() const noexcept { return gamma_; }
  double t_max() const noexcept { return t_max_; }

  /// Index of the last grid step, gamma - 1.
  std::int64_t last_step() const noexcept { return gamma_ - 1; }

  /// Value of g on grid step k in [0, gamma - 1]; step gamma - 1 is the
  /// boundary value at t_max.
  double step_value(std::int64_t k) const;

 private:
  std::int64_t n_;
  double R_;
  std::int64_t gamma_;
  double t_max_;
};

/// g(t; R). Throws std::domain_error unless 0 <= t <= t_max (t_max
/// compared with the snap rule). g(0; R) = (1 - R)^n when gamma(R) >= 2.
double g(double t, const GBoundContext& ctx);

/// Largest grid point t = k/n in [0, t_max] with g(t; R) <= delta.
///
/// g jumps only at multiples of 1/n, so for every delta in [(1-R)^n, 1)
/// with a non-empty feasible set the answer is a grid point and
/// g(g_inverse(delta)) <= delta. If the last interior step already fits
/// under delta the supremum t_max is not attained (g jumps to >= 1 there)
/// and the largest feasible grid point (gamma - 2)/n is returned.
///
/// Throws std::domain_error if delta < g(0; R), or if gamma(R) = 1 and the
/// feasible set is empty.
double g_inverse(double delta, const GBoundContext& ctx);

/// Super-uniform p-value for H0: R > alpha,
///   g(min{rhat, (gamma(alpha) - 1)/n}; alpha),
/// reported capped at 1 unless Reporting::raw. rhat is the sample mean of
/// the losses. Throws std::domain_error unless 0 <= rhat <= 1.
double prw_pvalue(double rhat, const TestSpec& spec,
                  Reporting reporting = Reporting::clamped);

}  // namespace prwpv
