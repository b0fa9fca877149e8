#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prwpv/baselines.hpp"
#include "prwpv/fwer.hpp"
#include "prwpv/prw.hpp"
#include "prwpv/random.hpp"

namespace prwpv::mc {

/// A loss distribution supported in [0, 1] with its analytic mean.
class LossDistribution {
 public:
  enum class Kind { bernoulli, beta, discrete };

  /// P(L = 1) = R, P(L = 0) = 1 - R, R in [0, 1].
  static LossDistribution bernoulli(double R);
  /// Beta(a, b), a, b > 0.
  static LossDistribution beta(double a, double b);
  /// Finite support in [0, 1] with probabilities summing to 1 (1e-12).
  static LossDistribution discrete(std::vector<double> support, std::vector<double> probs);

  Kind kind() const noexcept { return kind_; }
  double mean() const noexcept { return mean_; }

  double sample(random::Xoshiro256StarStar& gen) const;

  /// bernoulli:R, beta:a:b, or discrete:v@p,v@p,...
  std::string describe() const;

 private:
  LossDistribution() = default;

  Kind kind_ = Kind::bernoulli;
  double mean_ = 0.0;
  double a_ = 0.0;
  double b_ = 0.0;
  std::vector<double> support_;
  std::vector<double> cumulative_;
  std::vector<double> probs_;
};

/// Parses the CLI form ("bernoulli:0.2", "beta:2:38",
/// "discrete:0@0.5,1@0.5"). Throws std::invalid_argument on bad syntax and
/// std::domain_error on bad parameters.
LossDistribution parse_distribution(const std::string& text);

struct McOptions {
  /// Worker threads; 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Empirical P(p <= delta) per grid delta under a true null.
struct McReport {
  std::vector<double> delta_grid;
  std::vector<double> exceedance;
  std::vector<double> standard_error;
  std::int64_t reps = 0;
  std::uint64_t seed = 0;

  /// exceedance[i] <= delta[i] + sigmas * standard_error[i] for every i.
  bool within(double sigmas = 3.0) const noexcept;
};

/// Draws `reps` samples of size spec.n() from `dist`, computes `method`'s
/// p-value on each sample mean, and tallies p <= delta over the grid.
/// Standard errors are sqrt(phat (1 - phat) / reps). Bit-identical for
/// identical arguments, whatever options.threads is.
///
/// Throws std::domain_error if dist.mean() <= spec.alpha() (the null must
/// hold), reps < 1, or a grid value lies outside (0, 1).
McReport simulate_superuniformity(const LossDistribution& dist, const TestSpec& spec,
                                  PValueMethod method, const std::vector<double>& delta_grid,
                                  std::int64_t reps, std::uint64_t seed,
                                  const McOptions& options = {});

struct PowerReport {
  std::vector<PValueMethod> methods;
  /// Fraction of replications with p <= delta, per method.
  std::vector<double> rates;
  std::vector<double> standard_error;
  double delta = 0.0;
  std::int64_t reps = 0;
  std::uint64_t seed = 0;
};

/// Rejection rates at `delta` under an alternative. Every method sees the
/// same sampled losses in each replication. Throws std::domain_error if
/// dist.mean() >= spec.alpha().
PowerReport simulate_power(const LossDistribution& dist, const TestSpec& spec,
                           const std::vector<PValueMethod>& methods, double delta,
                           std::int64_t reps, std::uint64_t seed,
                           const McOptions& options = {});

/// Per-replication p-values of simulate_power, rows = replications,
/// columns = methods. Same streams as simulate_power.
std::vector<std::vector<double>> paired_pvalues(const LossDistribution& dist,
                                                const TestSpec& spec,
                                                const std::vector<PValueMethod>& methods,
                                                std::int64_t reps, std::uint64_t seed);

struct FwerMcReport {
  /// Empirical probability of at least one rejection.
  double fwer = 0.0;
  double standard_error = 0.0;
  std::int64_t reps = 0;
  std::uint64_t seed = 0;
};

/// Family-wise error of `procedure` when all `family_size` nulls are true:
/// each hypothesis gets its own sample of size spec.n() from `dist`, its
/// `method` p-value goes into the plan, and any rejection counts as an
/// error. Throws std::domain_error if dist.mean() <= spec.alpha().
FwerMcReport simulate_fwer(const LossDistribution& dist, const TestSpec& spec,
                           PValueMethod method, fwer::Procedure procedure,
                           std::size_t family_size, double delta,
                           const std::vector<double>& weights, std::int64_t reps,
                           std::uint64_t seed, const McOptions& options = {});

/// Mean of spec.n() draws from `dist`.
double sample_mean(const LossDistribution& dist, std::int64_t n,
                   random::Xoshiro256StarStar& gen);

}  // namespace prwpv::mc
