#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <json.hpp>
#include <optional>
#include <stdexcept>

#include "prwpv/baselines.hpp"
#include "prwpv/fwer.hpp"
#include "prwpv/mc.hpp"
#include "prwpv/prw.hpp"
#include "table_io.hpp"

namespace prwpv::cli {

namespace {

using nlohmann::json;

constexpr int kDefaultDigits = 4;

// PRWPV_DIGITS overrides the display precision when --digits is absent.
int default_digits() {
  if (const char* env = std::getenv("PRWPV_DIGITS")) {
    try {
      std::size_t used = 0;
      const int d = std::stoi(env, &used);
      if (used == std::string(env).size() && d >= 0 && d <= 17) return d;
    } catch (const std::exception&) {
    }
  }
  return kDefaultDigits;
}

enum class Format { csv, json };

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw std::invalid_argument("--format: expected csv or json, got '" + s + "'");
}

Reporting reporting_for(bool unclamped) {
  return unclamped ? Reporting::raw : Reporting::clamped;
}

double rounded_or_raw(double x, int digits) {
  return digits < 0 ? x : round_half_away(x, digits);
}

TestSpec make_spec(std::int64_t n, double alpha) {
  if (n < 1) throw std::invalid_argument("--n: must be >= 1, got " + std::to_string(n));
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("--alpha: must lie in (0, 1), got " + std::to_string(alpha));
  }
  return TestSpec(n, alpha);
}

// Options shared by compare and plotdata.
struct GridOptions {
  std::int64_t n = 100;
  double alpha = 0.1;
  std::string grid;
  std::string format = "csv";
  bool unclamped = false;
};

void add_grid_options(CLI::App* cmd, GridOptions& o, const std::string& default_grid) {
  o.grid = default_grid;
  cmd->add_option("--n", o.n, "Sample size")->capture_default_str();
  cmd->add_option("--alpha", o.alpha, "Risk threshold of H0: R > alpha")->capture_default_str();
  cmd->add_option("--grid", o.grid, "start:step:stop (inclusive) or 'table'")
      ->capture_default_str();
  cmd->add_option("--format", o.format, "csv or json")->capture_default_str();
  cmd->add_flag("--unclamped", o.unclamped, "Report raw bounds, possibly above 1");
}

int cmd_pvalue(std::optional<double> rhat, std::optional<std::int64_t> n,
               const std::string& losses_path, double alpha, const std::string& method_name,
               int digits, const std::string& format_name, bool unclamped, std::ostream& out) {
  const Format format = parse_format(format_name);
  double r = 0.0;
  std::int64_t size = 0;
  if (!losses_path.empty()) {
    if (rhat || n) throw std::invalid_argument("--losses cannot be combined with --rhat/--n");
    const LossSample sample = read_losses_file(losses_path);
    r = sample.rhat();
    size = sample.n();
  } else {
    if (!rhat || !n) throw std::invalid_argument("need --losses FILE, or both --rhat and --n");
    if (!(*rhat >= 0.0 && *rhat <= 1.0)) {
      throw std::invalid_argument("--rhat: must lie in [0, 1], got " + std::to_string(*rhat));
    }
    r = *rhat;
    size = *n;
  }
  const TestSpec spec = make_spec(size, alpha);

  std::vector<PValueMethod> methods;
  if (method_name == "all") {
    methods = {PValueMethod::prw, PValueMethod::hoeffding_tight, PValueMethod::bentkus};
  } else if (const auto m = parse_method(method_name)) {
    methods = {*m};
  } else {
    throw std::invalid_argument("--method: expected prw, bentkus, hoeffding-tight or all, got '" +
                                method_name + "'");
  }

  const Reporting reporting = reporting_for(unclamped);
  std::vector<double> values;
  for (auto m : methods) values.push_back(pvalue(m, r, spec, reporting));

  auto column = [](PValueMethod m) {
    return m == PValueMethod::hoeffding_tight ? std::string("hoeffding_tight")
                                              : std::string(to_string(m));
  };
  if (format == Format::json) {
    json doc{{"command", "pvalue"}, {"n", size},        {"alpha", alpha},
             {"rhat", r},           {"digits", digits}, {"unclamped", unclamped}};
    json pv = json::object();
    for (std::size_t i = 0; i < methods.size(); ++i) {
      pv[column(methods[i])] = rounded_or_raw(values[i], digits);
    }
    doc["pvalues"] = pv;
    out << doc.dump(2) << '\n';
    return kSuccess;
  }
  out << "rhat,n,alpha";
  for (auto m : methods) out << ',' << column(m);
  out << '\n' << format_value(r, -1) << ',' << size << ',' << format_value(alpha, -1);
  for (double v : values) out << ',' << format_value(v, digits);
  out << '\n';
  return kSuccess;
}

int cmd_compare(const GridOptions& o, int digits, std::ostream& out) {
  const Format format = parse_format(o.format);
  const TestSpec spec = make_spec(o.n, o.alpha);
  const auto grid = parse_grid(o.grid);
  const Reporting reporting = reporting_for(o.unclamped);

  if (format == Format::json) {
    json rows = json::array();
    for (double r : grid) {
      const auto rep = compare(r, spec, reporting);
      rows.push_back({{"rhat", rounded_or_raw(r, digits)},
                      {"prw", rounded_or_raw(rep.prw, digits)},
                      {"hoeffding_tight", rounded_or_raw(rep.hoeffding_tight, digits)},
                      {"bentkus", rounded_or_raw(rep.bentkus, digits)}});
    }
    json doc{{"command", "compare"}, {"n", o.n},     {"alpha", o.alpha},
             {"digits", digits},     {"rows", rows}};
    out << doc.dump(2) << '\n';
    return kSuccess;
  }
  out << "rhat,prw,hoeffding_tight,bentkus\n";
  for (double r : grid) {
    const auto rep = compare(r, spec, reporting);
    out << format_value(r, digits) << ',' << format_value(rep.prw, digits) << ','
        << format_value(rep.hoeffding_tight, digits) << ',' << format_value(rep.bentkus, digits)
        << '\n';
  }
  return kSuccess;
}

int cmd_plotdata(const GridOptions& o, std::ostream& out) {
  const Format format = parse_format(o.format);
  const TestSpec spec = make_spec(o.n, o.alpha);
  const auto grid = parse_grid(o.grid);
  const Reporting reporting = reporting_for(o.unclamped);
  const GBoundContext ctx(spec.n(), spec.alpha());
  // Capped exactly when the snapped step index passes the last interior step.
  auto capped = [&](double r) {
    const double x = static_cast<double>(spec.n()) * r;
    const double edge = static_cast<double>(ctx.last_step());
    return x - edge > kSnapTolerance * std::max(1.0, x);
  };

  if (format == Format::json) {
    json rows = json::array();
    for (double r : grid) {
      const auto rep = compare(r, spec, reporting);
      rows.push_back({{"rhat", r},
                      {"prw", rep.prw},
                      {"hoeffding_tight", rep.hoeffding_tight},
                      {"bentkus", rep.bentkus},
                      {"capped", capped(r)}});
    }
    json doc{{"command", "plotdata"}, {"n", o.n},         {"alpha", o.alpha},
             {"t_max", ctx.t_max()},  {"gamma", ctx.gamma()}, {"rows", rows}};
    out << doc.dump(2) << '\n';
    return kSuccess;
  }
  out << "rhat,prw,hoeffding_tight,bentkus,capped\n";
  for (double r : grid) {
    const auto rep = compare(r, spec, reporting);
    out << format_value(r, -1) << ',' << format_value(rep.prw, -1) << ','
        << format_value(rep.hoeffding_tight, -1) << ',' << format_value(rep.bentkus, -1) << ','
        << (capped(r) ? "true" : "false") << '\n';
  }
  return kSuccess;
}

int cmd_fwer(const std::string& path, const std::string& procedure_name, double delta,
             const std::string& weights_text, const std::string& format_name,
             std::ostream& out) {
  const Format format = parse_format(format_name);
  const auto procedure = fwer::parse_procedure(procedure_name);
  if (!procedure) {
    throw std::invalid_argument(
        "--procedure: expected fixed-sequence, fallback or bonferroni, got '" + procedure_name +
        "'");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("--delta: must lie in (0, 1), got " + std::to_string(delta));
  }
  fwer::FwerPlan plan;
  plan.pvalues = read_pvalues_file(path);
  plan.delta = delta;
  if (!weights_text.empty()) plan.weights = parse_real_list(weights_text, "--weights");
  if (*procedure == fwer::Procedure::fallback && !plan.weights) {
    throw std::invalid_argument("--weights: required by the fallback procedure");
  }
  const auto outcome = fwer::run(*procedure, plan);

  if (format == Format::json) {
    json hyps = json::array();
    for (std::size_t i = 0; i < plan.pvalues.size(); ++i) {
      hyps.push_back({{"index", i + 1},
                      {"pvalue", plan.pvalues[i]},
                      {"local_level", outcome.local_levels[i]},
                      {"rejected", static_cast<bool>(outcome.rejected[i])}});
    }
    json doc{{"command", "fwer"},
             {"procedure", std::string(fwer::to_string(*procedure))},
             {"delta", delta},
             {"rejections", outcome.rejection_count()},
             {"hypotheses", hyps}};
    out << doc.dump(2) << '\n';
    return kSuccess;
  }
  out << "index,pvalue,local_level,rejected\n";
  for (std::size_t i = 0; i < plan.pvalues.size(); ++i) {
    out << i + 1 << ',' << format_value(plan.pvalues[i], -1) << ','
        << format_value(outcome.local_levels[i], -1) << ','
        << (outcome.rejected[i] ? "true" : "false") << '\n';
  }
  return kSuccess;
}

struct ValidateOptions {
  std::string dist;
  std::int64_t n = 100;
  double alpha = 0.1;
  std::string method = "prw";
  std::int64_t reps = 100000;
  std::uint64_t seed = 42;
  std::string deltas = "0.01,0.05,0.1,0.2";
  unsigned threads = 0;
  std::string format = "csv";
};

int cmd_validate(const ValidateOptions& o, std::ostream& out) {
  const Format format = parse_format(o.format);
  const TestSpec spec = make_spec(o.n, o.alpha);
  const auto method = parse_method(o.method);
  if (!method) {
    throw std::invalid_argument("--method: expected prw, bentkus or hoeffding-tight, got '" +
                                o.method + "'");
  }
  if (o.reps < 1) throw std::invalid_argument("--reps: must be >= 1, got " + std::to_string(o.reps));
  const auto grid = parse_real_list(o.deltas, "--delta");
  const auto dist = mc::parse_distribution(o.dist);
  if (!(dist.mean() > spec.alpha())) {
    throw std::invalid_argument("--dist: mean " + std::to_string(dist.mean()) +
                                " is not above alpha " + std::to_string(spec.alpha()) +
                                "; validation needs a true null (R > alpha)");
  }
  const auto report = mc::simulate_superuniformity(dist, spec, *method, grid, o.reps, o.seed,
                                                   mc::McOptions{o.threads});
  const bool pass = report.within(3.0);

  if (format == Format::json) {
    json rows = json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double bound = grid[i] + 3.0 * report.standard_error[i];
      rows.push_back({{"delta", grid[i]},
                      {"exceedance", report.exceedance[i]},
                      {"stderr", report.standard_error[i]},
                      {"bound", bound},
                      {"ok", report.exceedance[i] <= bound}});
    }
    json doc{{"command", "validate"}, {"dist", dist.describe()},
             {"n", o.n},              {"alpha", o.alpha},
             {"method", o.method},    {"reps", report.reps},
             {"seed", report.seed},   {"pass", pass},
             {"rows", rows}};
    out << doc.dump(2) << '\n';
  } else {
    out << "delta,exceedance,stderr,bound,ok\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double bound = grid[i] + 3.0 * report.standard_error[i];
      out << format_value(grid[i], -1) << ',' << format_value(report.exceedance[i], -1) << ','
          << format_value(report.standard_error[i], -1) << ',' << format_value(bound, -1) << ','
          << (report.exceedance[i] <= bound ? "true" : "false") << '\n';
    }
  }
  return pass ? kSuccess : kValidationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Super-uniform p-values for the mean of [0,1]-bounded losses"};
  app.name("prwpv");
  app.require_subcommand(1);

  int digits = default_digits();

  // pvalue
  auto* pv = app.add_subcommand("pvalue", "P-value(s) for one empirical risk");
  double pv_rhat = 0.0;
  std::int64_t pv_n = 0;
  std::string pv_losses;
  double pv_alpha = 0.0;
  std::string pv_method = "all";
  std::string pv_format = "csv";
  bool pv_unclamped = false;
  auto* pv_rhat_opt = pv->add_option("--rhat", pv_rhat, "Empirical risk in [0, 1]");
  auto* pv_n_opt = pv->add_option("--n", pv_n, "Sample size");
  pv->add_option("--losses", pv_losses, "CSV file with a 'loss' column");
  pv->add_option("--alpha", pv_alpha, "Risk threshold of H0: R > alpha")->required();
  pv->add_option("--method", pv_method, "prw, bentkus, hoeffding-tight or all")
      ->capture_default_str();
  pv->add_option("--digits", digits, "Decimals to round to (half away from zero)");
  pv->add_option("--format", pv_format, "csv or json")->capture_default_str();
  pv->add_flag("--unclamped", pv_unclamped, "Report raw bounds, possibly above 1");

  // compare
  auto* cmp = app.add_subcommand("compare", "Rounded comparison table over an R-hat grid");
  GridOptions cmp_opts;
  add_grid_options(cmp, cmp_opts, "table");
  cmp->add_option("--digits", digits, "Decimals to round to (half away from zero)");

  // plotdata
  auto* plot = app.add_subcommand("plotdata", "Unrounded p-value curves for plotting");
  GridOptions plot_opts;
  add_grid_options(plot, plot_opts, "0:0.001:1");

  // fwer
  auto* fw = app.add_subcommand("fwer", "Run an FWER procedure on a p-value file");
  std::string fw_path;
  std::string fw_procedure;
  double fw_delta = 0.05;
  std::string fw_weights;
  std::string fw_format = "csv";
  fw->add_option("pvalues", fw_path, "CSV file with a 'pvalue' column")->required();
  fw->add_option("--procedure", fw_procedure, "fixed-sequence, fallback or bonferroni")
      ->required();
  fw->add_option("--delta", fw_delta, "Family-wise error level")->capture_default_str();
  fw->add_option("--weights", fw_weights, "Fallback weights, e.g. 0.5,0.5");
  fw->add_option("--format", fw_format, "csv or json")->capture_default_str();

  // validate
  auto* val = app.add_subcommand("validate", "Monte Carlo super-uniformity check under H0");
  ValidateOptions val_opts;
  val->add_option("--dist", val_opts.dist, "bernoulli:R, beta:a:b or discrete:v@p,...")
      ->required();
  val->add_option("--n", val_opts.n, "Sample size")->capture_default_str();
  val->add_option("--alpha", val_opts.alpha, "Risk threshold")->capture_default_str();
  val->add_option("--method", val_opts.method, "prw, bentkus or hoeffding-tight")
      ->capture_default_str();
  val->add_option("--reps", val_opts.reps, "Replications")->capture_default_str();
  val->add_option("--seed", val_opts.seed, "Master seed")->capture_default_str();
  val->add_option("--delta", val_opts.deltas, "Comma separated delta grid")
      ->capture_default_str();
  val->add_option("--threads", val_opts.threads, "Worker threads (0 = all cores)");
  val->add_option("--format", val_opts.format, "csv or json")->capture_default_str();

  std::vector<std::string> argv_storage{"prwpv"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageOrDataError;
  }

  try {
    if (*pv) {
      std::optional<double> rhat;
      std::optional<std::int64_t> n;
      if (pv_rhat_opt->count()) rhat = pv_rhat;
      if (pv_n_opt->count()) n = pv_n;
      return cmd_pvalue(rhat, n, pv_losses, pv_alpha, pv_method, digits, pv_format,
                        pv_unclamped, out);
    }
    if (*cmp) return cmd_compare(cmp_opts, digits, out);
    if (*plot) return cmd_plotdata(plot_opts, out);
    if (*fw) return cmd_fwer(fw_path, fw_procedure, fw_delta, fw_weights, fw_format, out);
    if (*val) return cmd_validate(val_opts, out);
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageOrDataError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageOrDataError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageOrDataError;
  }
  return kUsageOrDataError;
}

}  // namespace prwpv::cli
