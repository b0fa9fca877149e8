#include "prwpv/fwer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace prwpv::fwer {

namespace {

constexpr double kWeightSumTolerance = 1e-12;

void validate_common(const FwerPlan& plan) {
  if (plan.pvalues.empty()) throw std::domain_error("fwer: plan has no hypotheses");
  if (!(plan.delta > 0.0 && plan.delta < 1.0)) {
    throw std::domain_error("fwer: delta must lie in (0, 1), got " +
                            std::to_string(plan.delta));
  }
  for (std::size_t i = 0; i < plan.pvalues.size(); ++i) {
    const double p = plan.pvalues[i];
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::domain_error("fwer: p-value #" + std::to_string(i + 1) +
                              " outside [0, 1]: " + std::to_string(p));
    }
  }
}

const std::vector<double>& validated_weights(const FwerPlan& plan) {
  if (!plan.weights) throw std::domain_error("fwer: fallback requires weights");
  const auto& w = *plan.weights;
  if (w.size() != plan.pvalues.size()) {
    throw std::domain_error("fwer: " + std::to_string(w.size()) + " weights for " +
                            std::to_string(plan.pvalues.size()) + " hypotheses");
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!(w[i] >= 0.0) || !std::isfinite(w[i])) {
      throw std::domain_error("fwer: weight #" + std::to_string(i + 1) +
                              " must be a finite non-negative number");
    }
  }
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  if (std::abs(total - 1.0) > kWeightSumTolerance) {
    throw std::domain_error("fwer: weights must sum to 1, got " + std::to_string(total));
  }
  return w;
}

}  // namespace

std::size_t FwerOutcome::rejection_count() const noexcept {
  return static_cast<std::size_t>(std::count(rejected.begin(), rejected.end(), true));
}

std::string_view to_string(Procedure procedure) noexcept {
  switch (procedure) {
    case Procedure::fixed_sequence:
      return "fixed-sequence";
    case Procedure::fallback:
      return "fallback";
    case Procedure::bonferroni:
      return "bonferroni";
  }
  return "unknown";
}

std::optional<Procedure> parse_procedure(std::string_view name) noexcept {
  if (name == "fixed-sequence" || name == "fixed_sequence") return Procedure::fixed_sequence;
  if (name == "fallback") return Procedure::fallback;
  if (name == "bonferroni") return Procedure::bonferroni;
  return std::nullopt;
}

FwerOutcome fixed_sequence(const FwerPlan& plan) {
  validate_common(plan);
  const std::size_t m = plan.pvalues.size();
  FwerOutcome out{std::vector<bool>(m, false), std::vector<double>(m, 0.0)};
  for (std::size_t i = 0; i < m; ++i) {
    out.local_levels[i] = plan.delta;
    if (plan.pvalues[i] > plan.delta) break;
    out.rejected[i] = true;
  }
  return out;
}

FwerOutcome fallback(const FwerPlan& plan) {
  validate_common(plan);
  const auto& w = validated_weights(plan);
  const std::size_t m = plan.pvalues.size();
  FwerOutcome out{std::vector<bool>(m, false), std::vector<double>(m, 0.0)};
  double carried = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double level = plan.delta * w[i] + carried;
    out.local_levels[i] = level;
    out.rejected[i] = plan.pvalues[i] <= level;
    carried = out.rejected[i] ? level : 0.0;
  }
  return out;
}

FwerOutcome bonferroni(const FwerPlan& plan) {
  validate_common(plan);
  const std::size_t m = plan.pvalues.size();
  const double level = plan.delta / static_cast<double>(m);
  FwerOutcome out{std::vector<bool>(m, false), std::vector<double>(m, level)};
  for (std::size_t i = 0; i < m; ++i) out.rejected[i] = plan.pvalues[i] <= level;
  return out;
}

FwerOutcome run(Procedure procedure, const FwerPlan& plan) {
  switch (procedure) {
    case Procedure::fixed_sequence:
      return fixed_sequence(plan);
    case Procedure::fallback:
      return fallback(plan);
    case Procedure::bonferroni:
      return bonferroni(plan);
  }
  throw std::logic_error("fwer: unknown procedure");
}

}  // namespace prwpv::fwer
