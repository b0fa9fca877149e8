#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "prwpv/prw.hpp"

namespace prwpv {

/// Valid p-value constructions for H0: R > alpha.
enum class PValueMethod { prw, bentkus, hoeffding_tight };

std::string_view to_string(PValueMethod method) noexcept;

/// Parses "prw", "bentkus" or "hoeffding-tight" (underscore also accepted).
std::optional<PValueMethod> parse_method(std::string_view name) noexcept;

/// One row of a method comparison at a given empirical risk.
struct PValueReport {
  double rhat = 0.0;
  double alpha = 0.0;
  std::int64_t n = 0;
  double prw = 0.0;
  double bentkus = 0.0;
  double hoeffding_tight = 0.0;
};

/// Bentkus p-value e * P(Bin(n, alpha) <= ceil(n rhat)), with the same
/// integer-snapped ceiling as the PRW step index.
double bentkus_pvalue(double rhat, const TestSpec& spec,
                      Reporting reporting = Reporting::clamped);

/// Bernoulli KL divergence KL(a || b) for a in [0,1], b in (0,1).
/// Throws std::domain_error otherwise.
double kl_bernoulli(double a, double b);

/// Tight (Chernoff/KL) Hoeffding p-value exp(-n KL(min{rhat, alpha} || alpha)).
/// Evaluated at rhat itself, not at a grid ceiling; equals 1 for rhat >= alpha.
double hoeffding_tight_pvalue(double rhat, const TestSpec& spec);

/// Dispatches to the method's p-value.
double pvalue(PValueMethod method, double rhat, const TestSpec& spec,
              Reporting reporting = Reporting::clamped);

/// All three p-values at rhat.
PValueReport compare(double rhat, const TestSpec& spec,
                     Reporting reporting = Reporting::clamped);

}  // namespace prwpv
