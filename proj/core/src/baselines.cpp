#include "prwpv/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "prwpv/binomial.hpp"

namespace prwpv {

namespace {

void require_unit_rhat(double rhat) {
  if (!(rhat >= 0.0 && rhat <= 1.0)) {
    throw std::domain_error("rhat must lie in [0, 1], got " + std::to_string(rhat));
  }
}

}  // namespace

std::string_view to_string(PValueMethod method) noexcept {
  switch (method) {
    case PValueMethod::prw:
      return "prw";
    case PValueMethod::bentkus:
      return "bentkus";
    case PValueMethod::hoeffding_tight:
      return "hoeffding-tight";
  }
  return "unknown";
}

std::optional<PValueMethod> parse_method(std::string_view name) noexcept {
  if (name == "prw") return PValueMethod::prw;
  if (name == "bentkus") return PValueMethod::bentkus;
  if (name == "hoeffding-tight" || name == "hoeffding_tight") {
    return PValueMethod::hoeffding_tight;
  }
  return std::nullopt;
}

double bentkus_pvalue(double rhat, const TestSpec& spec, Reporting reporting) {
  require_unit_rhat(rhat);
  const std::int64_t k = ceil_scaled(spec.n(), rhat);
  const double value =
      std::numbers::e * binomial::cdf(binomial::BinomialParams(spec.n(), spec.alpha()), k);
  return reporting == Reporting::clamped ? std::min(1.0, value) : value;
}

double kl_bernoulli(double a, double b) {
  if (!(a >= 0.0 && a <= 1.0)) {
    throw std::domain_error("kl_bernoulli: a must lie in [0, 1], got " + std::to_string(a));
  }
  if (!(b > 0.0 && b < 1.0)) {
    throw std::domain_error("kl_bernoulli: b must lie in (0, 1), got " + std::to_string(b));
  }
  if (a == b) return 0.0;
  // a ln(a/b), with 0 ln 0 = 0
  const double head = a == 0.0 ? 0.0 : a * std::log(a / b);
  // (1-a) ln((1-a)/(1-b)) through log1p so that a, b near 0 stay accurate
  const double tail = a == 1.0 ? 0.0 : (1.0 - a) * (std::log1p(-a) - std::log1p(-b));
  return std::max(0.0, head + tail);
}

double hoeffding_tight_pvalue(double rhat, const TestSpec& spec) {
  require_unit_rhat(rhat);
  const double a = std::min(rhat, spec.alpha());
  return std::exp(-static_cast<double>(spec.n()) * kl_bernoulli(a, spec.alpha()));
}

double pvalue(PValueMethod method, double rhat, const TestSpec& spec, Reporting reporting) {
  switch (method) {
    case PValueMethod::prw:
      return prw_pvalue(rhat, spec, reporting);
    case PValueMethod::bentkus:
      return bentkus_pvalue(rhat, spec, reporting);
    case PValueMethod::hoeffding_tight:
      return hoeffding_tight_pvalue(rhat, spec);
  }
  throw std::logic_error("pvalue: unknown method");
}

PValueReport compare(double rhat, const TestSpec& spec, Reporting reporting) {
  PValueReport report;
  report.rhat = rhat;
  report.alpha = spec.alpha();
  report.n = spec.n();
  report.prw = prw_pvalue(rhat, spec, reporting);
  report.bentkus = bentkus_pvalue(rhat, spec, reporting);
  report.hoeffding_tight = hoeffding_tight_pvalue(rhat, spec);
  return report;
}

}  // namespace prwpv
