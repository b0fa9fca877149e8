#include "prwpv/mc.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace prwpv::mc {

namespace {

void require_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error(std::string(what) + " must lie in [0, 1], got " +
                            std::to_string(x));
  }
}

void require_reps(std::int64_t reps) {
  if (reps < 1) throw std::domain_error("mc: reps must be >= 1, got " + std::to_string(reps));
}

double binomial_stderr(double phat, std::int64_t reps) {
  return std::sqrt(phat * (1.0 - phat) / static_cast<double>(reps));
}

unsigned resolve_threads(const McOptions& options, std::int64_t reps) {
  unsigned t = options.threads;
  if (t == 0) t = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::int64_t>(t, reps));
}

// Runs body(first, last, counts) over contiguous chunks of [0, reps) and
// sums the per-chunk integer tallies. Integer sums are merge-order
// independent, so the result does not depend on the thread count.
template <class Body>
std::vector<std::int64_t> tally(std::int64_t reps, std::size_t slots, unsigned threads,
                                Body body) {
  std::vector<std::vector<std::int64_t>> partial(threads,
                                                 std::vector<std::int64_t>(slots, 0));
  const std::int64_t chunk = (reps + threads - 1) / threads;
  auto work = [&](unsigned c) {
    const std::int64_t first = std::min<std::int64_t>(reps, c * chunk);
    const std::int64_t last = std::min<std::int64_t>(reps, first + chunk);
    body(first, last, partial[c]);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned c = 0; c < threads; ++c) pool.emplace_back(work, c);
  }
  std::vector<std::int64_t> total(slots, 0);
  for (const auto& p : partial) {
    for (std::size_t i = 0; i < slots; ++i) total[i] += p[i];
  }
  return total;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double to_double(const std::string& s, const std::string& context) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("distribution '" + context + "': bad number '" + s + "'");
  }
  if (used != s.size()) {
    throw std::invalid_argument("distribution '" + context + "': bad number '" + s + "'");
  }
  return v;
}

}  // namespace

LossDistribution LossDistribution::bernoulli(double R) {
  require_unit(R, "bernoulli mean");
  LossDistribution d;
  d.kind_ = Kind::bernoulli;
  d.a_ = R;
  d.mean_ = R;
  return d;
}

LossDistribution LossDistribution::beta(double a, double b) {
  if (!(a > 0.0 && b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::domain_error("beta: shape parameters must be finite and > 0");
  }
  LossDistribution d;
  d.kind_ = Kind::beta;
  d.a_ = a;
  d.b_ = b;
  d.mean_ = a / (a + b);
  return d;
}

LossDistribution LossDistribution::discrete(std::vector<double> support,
                                            std::vector<double> probs) {
  if (support.empty() || support.size() != probs.size()) {
    throw std::domain_error("discrete: support and probabilities must be non-empty and "
                            "of equal length");
  }
  for (double v : support) require_unit(v, "discrete support value");
  for (double p : probs) require_unit(p, "discrete probability");
  const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::domain_error("discrete: probabilities must sum to 1, got " +
                            std::to_string(total));
  }
  LossDistribution d;
  d.kind_ = Kind::discrete;
  d.cumulative_.resize(probs.size());
  std::partial_sum(probs.begin(), probs.end(), d.cumulative_.begin());
  d.cumulative_.back() = 1.0;
  d.mean_ = std::inner_product(support.begin(), support.end(), probs.begin(), 0.0);
  d.support_ = std::move(support);
  d.probs_ = std::move(probs);
  return d;
}

double LossDistribution::sample(random::Xoshiro256StarStar& gen) const {
  switch (kind_) {
    case Kind::bernoulli:
      return random::uniform01(gen) < a_ ? 1.0 : 0.0;
    case Kind::beta:
      return random::beta(gen, a_, b_);
    case Kind::discrete: {
      const double u = random::uniform01(gen);
      const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
      const auto idx = std::min<std::size_t>(
          static_cast<std::size_t>(it - cumulative_.begin()), support_.size() - 1);
      return support_[idx];
    }
  }
  return 0.0;
}

namespace {

// Shortest text that parses back to x.
std::string shortest(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string LossDistribution::describe() const {
  std::ostringstream out;
  switch (kind_) {
    case Kind::bernoulli:
      out << "bernoulli:" << shortest(a_);
      break;
    case Kind::beta:
      out << "beta:" << shortest(a_) << ':' << shortest(b_);
      break;
    case Kind::discrete:
      out << "discrete:";
      for (std::size_t i = 0; i < support_.size(); ++i) {
        if (i) out << ',';
        out << shortest(support_[i]) << '@' << shortest(probs_[i]);
      }
      break;
  }
  return out.str();
}

LossDistribution parse_distribution(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument("distribution '" + text +
                                "': expected bernoulli:R, beta:a:b or discrete:v@p,...");
  }
  const std::string kind = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);
  if (kind == "bernoulli") return LossDistribution::bernoulli(to_double(rest, text));
  if (kind == "beta") {
    const auto parts = split(rest, ':');
    if (parts.size() != 2) {
      throw std::invalid_argument("distribution '" + text + "': expected beta:a:b");
    }
    return LossDistribution::beta(to_double(parts[0], text), to_double(parts[1], text));
  }
  if (kind == "discrete") {
    std::vector<double> support;
    std::vector<double> probs;
    for (const auto& item : split(rest, ',')) {
      const auto at = item.find('@');
      if (at == std::string::npos) {
        throw std::invalid_argument("distribution '" + text + "': expected value@prob");
      }
      support.push_back(to_double(item.substr(0, at), text));
      probs.push_back(to_double(item.substr(at + 1), text));
    }
    return LossDistribution::discrete(std::move(support), std::move(probs));
  }
  throw std::invalid_argument("distribution '" + text + "': unknown kind '" + kind + "'");
}

bool McReport::within(double sigmas) const noexcept {
  for (std::size_t i = 0; i < delta_grid.size(); ++i) {
    if (exceedance[i] > delta_grid[i] + sigmas * standard_error[i]) return false;
  }
  return true;
}

double sample_mean(const LossDistribution& dist, std::int64_t n,
                   random::Xoshiro256StarStar& gen) {
  double sum = 0.0;
  for (std::int64_t i = 0; i < n; ++i) sum += dist.sample(gen);
  return std::clamp(sum / static_cast<double>(n), 0.0, 1.0);
}

McReport simulate_superuniformity(const LossDistribution& dist, const TestSpec& spec,
                                  PValueMethod method, const std::vector<double>& delta_grid,
                                  std::int64_t reps, std::uint64_t seed,
                                  const McOptions& options) {
  if (!(dist.mean() > spec.alpha())) {
    throw std::domain_error("simulate_superuniformity: distribution mean " +
                            std::to_string(dist.mean()) + " <= alpha " +
                            std::to_string(spec.alpha()) +
                            "; the null R > alpha must hold to measure validity");
  }
  require_reps(reps);
  for (double d : delta_grid) {
    if (!(d > 0.0 && d < 1.0)) {
      throw std::domain_error("simulate_superuniformity: grid value outside (0, 1): " +
                              std::to_string(d));
    }
  }

  const auto counts = tally(
      reps, delta_grid.size(), resolve_threads(options, reps),
      [&](std::int64_t first, std::int64_t last, std::vector<std::int64_t>& acc) {
        for (std::int64_t r = first; r < last; ++r) {
          auto gen = random::stream_for(seed, static_cast<std::uint64_t>(r));
          const double p = pvalue(method, sample_mean(dist, spec.n(), gen), spec);
          for (std::size_t i = 0; i < delta_grid.size(); ++i) {
            if (p <= delta_grid[i]) ++acc[i];
          }
        }
      });

  McReport report;
  report.delta_grid = delta_grid;
  report.reps = reps;
  report.seed = seed;
  for (std::int64_t c : counts) {
    const double phat = static_cast<double>(c) / static_cast<double>(reps);
    report.exceedance.push_back(phat);
    report.standard_error.push_back(binomial_stderr(phat, reps));
  }
  return report;
}

PowerReport simulate_power(const LossDistribution& dist, const TestSpec& spec,
                           const std::vector<PValueMethod>& methods, double delta,
                           std::int64_t reps, std::uint64_t seed, const McOptions& options) {
  if (!(dist.mean() < spec.alpha())) {
    throw std::domain_error("simulate_power: distribution mean " +
                            std::to_string(dist.mean()) + " >= alpha " +
                            std::to_string(spec.alpha()) + "; power needs R < alpha");
  }
  require_reps(reps);
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("simulate_power: delta must lie in (0, 1)");
  }

  const auto counts = tally(
      reps, methods.size(), resolve_threads(options, reps),
      [&](std::int64_t first, std::int64_t last, std::vector<std::int64_t>& acc) {
        for (std::int64_t r = first; r < last; ++r) {
          auto gen = random::stream_for(seed, static_cast<std::uint64_t>(r));
          const double rhat = sample_mean(dist, spec.n(), gen);
          for (std::size_t m = 0; m < methods.size(); ++m) {
            if (pvalue(methods[m], rhat, spec) <= delta) ++acc[m];
          }
        }
      });

  PowerReport report;
  report.methods = methods;
  report.delta = delta;
  report.reps = reps;
  report.seed = seed;
  for (std::int64_t c : counts) {
    const double rate = static_cast<double>(c) / static_cast<double>(reps);
    report.rates.push_back(rate);
    report.standard_error.push_back(binomial_stderr(rate, reps));
  }
  return report;
}

std::vector<std::vector<double>> paired_pvalues(const LossDistribution& dist,
                                                const TestSpec& spec,
                                                const std::vector<PValueMethod>& methods,
                                                std::int64_t reps, std::uint64_t seed) {
  require_reps(reps);
  std::vector<std::vector<double>> rows;
  rows.reserve(static_cast<std::size_t>(reps));
  for (std::int64_t r = 0; r < reps; ++r) {
    auto gen = random::stream_for(seed, static_cast<std::uint64_t>(r));
    const double rhat = sample_mean(dist, spec.n(), gen);
    std::vector<double> row;
    row.reserve(methods.size());
    for (auto m : methods) row.push_back(pvalue(m, rhat, spec, Reporting::raw));
    rows.push_back(std::move(row));
  }
  return rows;
}

FwerMcReport simulate_fwer(const LossDistribution& dist, const TestSpec& spec,
                           PValueMethod method, fwer::Procedure procedure,
                           std::size_t family_size, double delta,
                           const std::vector<double>& weights, std::int64_t reps,
                           std::uint64_t seed, const McOptions& options) {
  if (!(dist.mean() > spec.alpha())) {
    throw std::domain_error("simulate_fwer: distribution mean must exceed alpha so that "
                            "every null is true");
  }
  require_reps(reps);
  if (family_size == 0) throw std::domain_error("simulate_fwer: empty family");

  const auto counts = tally(
      reps, 1, resolve_threads(options, reps),
      [&](std::int64_t first, std::int64_t last, std::vector<std::int64_t>& acc) {
        fwer::FwerPlan plan;
        plan.delta = delta;
        if (!weights.empty()) plan.weights = weights;
        plan.pvalues.resize(family_size);
        for (std::int64_t r = first; r < last; ++r) {
          auto gen = random::stream_for(seed, static_cast<std::uint64_t>(r));
          for (auto& p : plan.pvalues) p = pvalue(method, sample_mean(dist, spec.n(), gen), spec);
          if (fwer::run(procedure, plan).rejection_count() > 0) ++acc[0];
        }
      });

  FwerMcReport report;
  report.reps = reps;
  report.seed = seed;
  report.fwer = static_cast<double>(counts[0]) / static_cast<double>(reps);
  report.standard_error = binomial_stderr(report.fwer, reps);
  return report;
}

}  // namespace prwpv::mc
