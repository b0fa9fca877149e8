#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace prwpv::fwer {

/// An a-priori ordered family of null hypotheses with their p-values.
struct FwerPlan {
  std::vector<double> pvalues;
  /// Fallback allocation of delta; non-negative, summing to 1.
  std::optional<std::vector<double>> weights;
  double delta = 0.05;
};

struct FwerOutcome {
  std::vector<bool> rejected;
  /// Level each hypothesis was tested at; 0 for hypotheses never reached.
  std::vector<double> local_levels;

  std::size_t rejection_count() const noexcept;
};

enum class Procedure { fixed_sequence, fallback, bonferroni };

std::string_view to_string(Procedure procedure) noexcept;
std::optional<Procedure> parse_procedure(std::string_view name) noexcept;

/// Tests in order at full level delta and stops at the first p_i > delta.
/// Throws std::domain_error on an empty plan, p-values outside [0, 1], or
/// delta outside (0, 1).
FwerOutcome fixed_sequence(const FwerPlan& plan);

/// Hypothesis i is tested at lambda_i = delta w_i plus lambda_{i-1} when
/// hypothesis i-1 was rejected. Requires weights of matching length, each
/// >= 0, summing to 1 within 1e-12.
FwerOutcome fallback(const FwerPlan& plan);

/// Rejects p_i <= delta / m.
FwerOutcome bonferroni(const FwerPlan& plan);

FwerOutcome run(Procedure procedure, const FwerPlan& plan);

}  // namespace prwpv::fwer
