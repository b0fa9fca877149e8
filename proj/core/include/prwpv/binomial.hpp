#pragma once

#include <cstdint>

namespace prwpv::binomial {

/// Parameters of a Binomial(n, p) distribution.
///
/// Construction validates n >= 1 and 0 <= p <= 1 and throws
/// std::domain_error otherwise, so every live instance is well formed.
class BinomialParams {
 public:
  BinomialParams(std::int64_t n, double p);

  std::int64_t n() const noexcept { return n_; }
  double p() const noexcept { return p_; }

 private:
  std::int64_t n_;
  double p_;
};

/// Natural log of P(Bin(n,p) = k). Returns -infinity when the mass is zero
/// (p = 0 with k > 0, p = 1 with k < n). Throws std::domain_error for k
/// outside [0, n].
///
/// Interior terms use Loader's saddle-point decomposition (Stirling error
/// plus a deviance term), which keeps ~1e-15 relative accuracy for large n
/// where ln C(n,k) through lgamma would lose digits.
double log_pmf(const BinomialParams& params, std::int64_t k);

/// P(Bin(n,p) <= k). Saturates to 0 for k < 0 and 1 for k >= n.
double cdf(const BinomialParams& params, std::int64_t k);

/// P(Bin(n,p) >= t), summed directly over the upper tail (never 1 - cdf) so
/// that tiny survival probabilities keep full relative precision.
/// Saturates to 1 for t <= 0 and 0 for t > n.
double sf(const BinomialParams& params, std::int64_t t);

/// ln cdf(k); -infinity for k < 0.
double log_cdf(const BinomialParams& params, std::int64_t k);

/// ln sf(t); -infinity for t > n. Stays finite where sf underflows.
double log_sf(const BinomialParams& params, std::int64_t t);

}  // namespace prwpv::binomial
