// Command-line front end. Exit codes: 0 success, 1 a check failed, 2 usage or
// input error.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <json.hpp>

#include "nsl/check_registry.hpp"
#include "nsl/errors.hpp"
#include "nsl/gaussian.hpp"
#include "nsl/hardness.hpp"
#include "nsl/parallel.hpp"
#include "nsl/profile_io.hpp"
#include "nsl/report_io.hpp"
#include "nsl/social_choice.hpp"
#include "nsl/spherical.hpp"

namespace {

using nlohmann::json;
using namespace nsl;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct Config {
  unsigned jobs = 0;
  std::string format = "table";
  std::string out;
  std::optional<double> rho;
  double r = 1.0;
  double s = 1.0;
  std::optional<int> depth;
  std::vector<std::string> grid;
  std::uint64_t samples = 1000000;
  std::string seed;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const Config& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw UsageError("cannot write " + cfg.out);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

double require_rho(const Config& cfg) {
  if (!cfg.rho) throw UsageError("--rho is required");
  return *cfg.rho;
}

std::uint64_t resolve_seed(const Config& cfg) {
  if (cfg.seed.empty()) throw UsageError("Monte Carlo runs need --seed <integer> or --seed auto");
  if (cfg.seed == "auto") {
    std::random_device rd;
    const std::uint64_t seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    std::cerr << "seed auto: using --seed " << seed << '\n';
    return seed;
  }
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(cfg.seed, &used);
    if (used != cfg.seed.size()) throw std::invalid_argument("seed");
    return v;
  } catch (const std::exception&) {
    throw UsageError("--seed must be a non-negative integer or 'auto'");
  }
}

std::string kv_table(const std::vector<std::pair<std::string, std::string>>& kv) {
  std::vector<std::vector<std::string>> rows = {{"quantity", "value"}};
  for (const auto& [k, v] : kv) rows.push_back({k, v});
  return text_table(rows);
}

// Renders a flat JSON object as table or CSV; JSON is printed as is.
std::string render_object(const Config& cfg, const json& obj) {
  const OutputFormat fmt = parse_output_format(cfg.format);
  if (fmt == OutputFormat::json) return obj.dump(2);
  std::vector<std::vector<std::string>> rows = {{"quantity", "value"}};
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    rows.push_back({it.key(), it->is_string() ? it->get<std::string>() : it->dump()});
  }
  return fmt == OutputFormat::csv ? csv_rows(rows) : text_table(rows);
}

std::string render_rows(const Config& cfg, const std::vector<std::vector<std::string>>& rows) {
  const OutputFormat fmt = parse_output_format(cfg.format);
  if (fmt == OutputFormat::csv) return csv_rows(rows);
  if (fmt == OutputFormat::table) return text_table(rows);
  json arr = json::array();
  for (std::size_t i = 1; i < rows.size(); ++i) {
    json o;
    for (std::size_t c = 0; c < rows[0].size(); ++c) {
      const std::string& cell = rows[i][c];
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (!cell.empty() && end && *end == '\0') o[rows[0][c]] = v;
      else o[rows[0][c]] = cell;
    }
    arr.push_back(o);
  }
  return arr.dump(2);
}

// ----------------------------------------------------------------------------

int cmd_constants(const Config& cfg, double beta_lower) {
  const std::vector<ConstantResult> all = {alpha2(), alpha3(), beta3(beta_lower)};
  const OutputFormat fmt = parse_output_format(cfg.format);
  if (fmt == OutputFormat::json) {
    json arr = json::array();
    for (const auto& c : all) arr.push_back(constant_to_json(c));
    emit(cfg, arr.dump(2));
    return kExitOk;
  }
  std::vector<std::vector<std::string>> rows = {{"constant", "value", "argmin", "argmin_tolerance", "interval", "note"}};
  for (const auto& c : all) {
    std::string note = c.attained_at_endpoint ? "endpoint" : "interior";
    if (c.conditional) note += ", conditional on the sector reduction";
    if (c.name == "beta3") note += c.monotone ? ", monotone" : ", not monotone";
    rows.push_back({c.name, format_real(c.value), format_real(c.argmin), format_real(c.tolerance),
                    "[" + format_real(c.lo) + ", " + format_real(c.hi) + "]", note});
  }
  emit(cfg, fmt == OutputFormat::csv ? csv_rows(rows) : text_table(rows));
  return kExitOk;
}

int cmd_verify(const Config& cfg, const std::vector<std::string>& which, bool refine) {
  std::vector<std::string> names;
  for (const auto& w : which) {
    const auto members = suite_members(w);
    if (!members.empty()) {
      names.insert(names.end(), members.begin(), members.end());
    } else if (is_registered_check(w)) {
      names.push_back(w);
    } else {
      std::string known;
      for (const auto& info : registered_checks()) known += " " + info.name;
      throw UsageError("unknown check '" + w + "'; known checks:" + known + "; suites: all matlab scalar");
    }
  }
  CheckOverrides overrides;
  overrides.rho = cfg.rho;
  overrides.depth = cfg.depth;
  overrides.refine = refine;
  for (const auto& g : cfg.grid) overrides.grid.push_back(GridAxis::parse(g));

  const OutputFormat fmt = parse_output_format(cfg.format);
  std::ostream& log = fmt == OutputFormat::table && cfg.out.empty() ? std::cout : std::cerr;
  std::vector<CheckReport> reports;
  bool ok = true;
  for (const auto& name : names) {
    CheckReport r = run_check(name, overrides);
    log << name << ": " << (r.passed ? "Verified" : "FAILED") << '\n';
    ok = ok && r.passed;
    reports.push_back(std::move(r));
  }
  if (fmt == OutputFormat::json) {
    if (reports.size() == 1 && which.size() == 1 && suite_members(which[0]).empty()) {
      emit(cfg, report_to_json(reports[0]).dump(2));
    } else {
      json arr = json::array();
      for (const auto& r : reports) arr.push_back(report_to_json(r));
      emit(cfg, arr.dump(2));
      std::cerr << reports_table(reports);
    }
  } else if (fmt == OutputFormat::csv) {
    emit(cfg, reports_csv(reports));
  } else {
    emit(cfg, reports_table(reports));
  }
  return ok ? kExitOk : kExitFailed;
}

int cmd_cones(const Config& cfg) {
  const double rho = require_rho(cfg);
  const StabilityValue v = cone_partition_stability(rho);
  emit(cfg, render_object(cfg, {{"target", "cones"}, {"rho", rho}, {"value", v.value}, {"uncertainty", v.uncertainty}}));
  return kExitOk;
}

int cmd_arcs(const Config& cfg, const std::vector<double>& thetas, int curve_points) {
  SphericalKernelParams p;
  p.rho = require_rho(cfg);
  p.r = cfg.r;
  p.s = cfg.s;
  p.validate();
  const EigenvalueSequence seq = lambda_sequence(p, cfg.depth.value_or(kDefaultDepth));
  const OutputFormat fmt = parse_output_format(cfg.format);
  std::vector<std::vector<std::string>> curve = {{"theta", "F", "uncertainty"}};
  if (curve_points >= 2) {
    for (double t : matlab_linspace(0.0, 2.0 * kPi, curve_points)) {
      const Estimate e = arc_F(seq, t);
      curve.push_back({format_real(t), format_real(e.value), format_real(e.uncertainty)});
    }
  }
  if (fmt == OutputFormat::csv) {
    // Plot-ready: the requested angles first when no curve was asked for.
    if (curve.size() == 1) {
      for (double t : thetas) {
        const Estimate e = arc_F(seq, t);
        curve.push_back({format_real(t), format_real(e.value), format_real(e.uncertainty)});
      }
    }
    emit(cfg, csv_rows(curve));
    return kExitOk;
  }
  json values = json::array();
  for (double t : thetas) {
    const Estimate e = arc_F(seq, t);
    values.push_back({{"theta", t}, {"F", e.value}, {"uncertainty", e.uncertainty}});
  }
  json out = {{"target", "arcs"}, {"rho", p.rho}, {"r", p.r}, {"s", p.s}, {"a", seq.a}, {"depth", seq.depth}, {"values", values}};
  if (fmt == OutputFormat::json) {
    if (curve.size() > 1) {
      json c = json::array();
      for (std::size_t i = 1; i < curve.size(); ++i) c.push_back({std::stod(curve[i][0]), std::stod(curve[i][1])});
      out["curve"] = c;
    }
    emit(cfg, out.dump(2));
    return kExitOk;
  }
  std::vector<std::vector<std::string>> rows = {{"theta", "F", "uncertainty"}};
  for (const auto& v : values) {
    rows.push_back({format_real(v["theta"].get<double>()), format_real(v["F"].get<double>()),
                    format_real(v["uncertainty"].get<double>())});
  }
  emit(cfg, "a = " + format_real(seq.a) + ", depth " + std::to_string(seq.depth) + "\n" + text_table(rows));
  return kExitOk;
}

int cmd_profile(const Config& cfg, const std::string& path, bool antipodal) {
  const double rho = require_rho(cfg);
  const RadialPartitionProfile prof = load_profile(path);
  const int depth = cfg.depth.value_or(kDefaultDepth);
  json out = {{"target", "profile"}, {"file", path}, {"rho", rho}};
  if (antipodal) {
    const BilinearStability b = bilinear_profile_stability(rho, prof, prof.antipodal(), depth);
    out["value"] = b.total.value;
    out["uncertainty"] = b.total.uncertainty;
    out["pairing"] = "antipodal";
  } else {
    const StabilityValue v = profile_stability(rho, prof, depth);
    out["value"] = v.value;
    out["uncertainty"] = v.uncertainty;
  }
  const auto m = prof.gaussian_measures();
  out["measures"] = {m[0], m[1], m[2]};
  out["cone_value"] = cone_partition_stability(rho).value;
  if (parse_output_format(cfg.format) != OutputFormat::json) {
    out["measures"] = format_real(m[0]) + " " + format_real(m[1]) + " " + format_real(m[2]);
  }
  emit(cfg, render_object(cfg, out));
  return kExitOk;
}

struct RuleArgs {
  std::string rule = "plurality";
  int k = 3;
  int n = 3;
};

VotingRule make_rule(const RuleArgs& a) {
  if (a.rule == "plurality") return VotingRule::plurality(a.k, a.n);
  if (a.rule == "majority") return VotingRule::majority(a.n);
  if (a.rule == "dictator") return VotingRule::dictator(a.k, a.n);
  if (a.rule == "constant") return VotingRule::constant(a.k, a.n);
  return load_rule(a.rule);
}

int cmd_discrete(const Config& cfg, const RuleArgs& args, bool mc, int influence_voter) {
  const VotingRule rule = make_rule(args);
  const NoiseKernel kernel(rule.k(), require_rho(cfg));
  json out = {{"target", "discrete"}, {"rule", rule.name()}, {"k", rule.k()}, {"n", rule.n()}, {"rho", kernel.rho}};
  if (mc) {
    const std::uint64_t seed = resolve_seed(cfg);
    const McEstimate e = noise_stability_mc(rule, kernel, cfg.samples, seed);
    out["method"] = "monte_carlo";
    out["value"] = e.estimate;
    out["standard_error"] = e.standard_error;
    out["samples"] = e.samples;
    out["seed"] = seed;
  } else {
    out["method"] = "exact";
    out["value"] = noise_stability_exact(rule, kernel);
    out["uncertainty"] = 0.0;
  }
  if (influence_voter >= 0) out["influence"] = influence(rule, influence_voter);
  if (rule.k() == 3 && kernel.rho > -0.5) out["gaussian_limit"] = plurality_limit(kernel.rho);
  emit(cfg, render_object(cfg, out));
  return kExitOk;
}

int cmd_lambda(const Config& cfg, std::optional<double> a_arg) {
  double a = 0.0;
  if (a_arg) {
    a = *a_arg;
  } else {
    SphericalKernelParams p;
    p.rho = require_rho(cfg);
    p.r = cfg.r;
    p.s = cfg.s;
    p.validate();
    a = p.scaled();
  }
  const EigenvalueSequence seq = lambda_sequence(a, cfg.depth.value_or(kDefaultDepth));
  std::vector<std::vector<std::string>> rows = {{"d", "lambda", "lower", "upper"}};
  for (int d = 0; d <= seq.depth; ++d) {
    std::string lo = "", hi = "";
    if (a > 0.0 && d >= 1) {
      const Envelope e = lambda_bounds(a, d);
      lo = format_real(e.lower);
      hi = format_real(e.upper);
    }
    rows.push_back({std::to_string(d), format_real(seq[d]), lo, hi});
  }
  if (parse_output_format(cfg.format) == OutputFormat::json) {
    json vals = json::array();
    for (int d = 0; d <= seq.depth; ++d) vals.push_back(seq[d]);
    emit(cfg, json{{"a", a}, {"depth", seq.depth}, {"lambda", vals}, {"tail_bound", seq.tail_bound}}.dump(2));
    return kExitOk;
  }
  emit(cfg, render_rows(cfg, rows));
  return kExitOk;
}

std::vector<std::vector<std::string>> convergence_rows(const std::vector<ConvergenceRow>& rows) {
  std::vector<std::vector<std::string>> out = {{"n", "value", "standard_error", "exact", "limit", "gap"}};
  for (const auto& r : rows) {
    out.push_back({std::to_string(r.n), format_real(r.value), format_real(r.standard_error), r.exact ? "1" : "0",
                   format_real(r.limit), format_real(r.gap)});
  }
  return out;
}

int cmd_simulate(const Config& cfg, const std::string& what, std::vector<int> ns, const std::string& profile_path,
                 const RuleArgs& rule_args) {
  const double rho = require_rho(cfg);
  const std::uint64_t seed = resolve_seed(cfg);
  if (what == "plurality" || what == "majority") {
    if (ns.empty()) ns = {1, 3, 5, 7, 11, 21, 51, 101};
    const auto rows = what == "plurality" ? plurality_convergence_report(rho, ns, cfg.samples, seed)
                                          : majority_convergence_report(rho, ns, cfg.samples, seed);
    emit(cfg, render_rows(cfg, convergence_rows(rows)));
    return kExitOk;
  }
  if (what == "discrete") {
    Config c = cfg;
    c.seed = std::to_string(seed);
    return cmd_discrete(c, rule_args, true, -1);
  }
  if (what == "gaussian") {
    const RadialPartitionProfile prof =
        profile_path.empty() ? RadialPartitionProfile::sectors() : load_profile(profile_path);
    const PlaneLabel label = profile_label(prof);
    const McEstimate e = partition_agreement_mc(rho, label, label, cfg.samples, seed);
    json out = {{"target", "gaussian"}, {"rho", rho}, {"value", e.estimate}, {"standard_error", e.standard_error},
                {"samples", e.samples}, {"seed", seed}};
    if (profile_path.empty()) out["cone_value"] = cone_partition_stability(rho).value;
    emit(cfg, render_object(cfg, out));
    return kExitOk;
  }
  throw UsageError("unknown simulation '" + what + "' (expected plurality, majority, discrete or gaussian)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noise stability toolkit: hardness constants, numerical verifications, stability evaluation"};
  app.require_subcommand(1);
  Config cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--jobs", cfg.jobs, "worker threads (0 = all cores)")->envname("NSL_JOBS");
    sub->add_option("--format", cfg.format, "json, csv or table")->envname("NSL_FORMAT");
    sub->add_option("--out", cfg.out, "write output to this file")->envname("NSL_OUT");
  };
  auto add_rho = [&](CLI::App* sub) { sub->add_option("--rho", cfg.rho, "correlation")->envname("NSL_RHO"); };
  auto add_radii = [&](CLI::App* sub) {
    sub->add_option("--r", cfg.r, "first radius")->envname("NSL_R");
    sub->add_option("--s", cfg.s, "second radius")->envname("NSL_S");
  };
  auto add_depth = [&](CLI::App* sub) { sub->add_option("--depth", cfg.depth, "series truncation depth D")->envname("NSL_DEPTH"); };
  auto add_mc = [&](CLI::App* sub) {
    sub->add_option("--samples", cfg.samples, "Monte Carlo samples")->envname("NSL_SAMPLES");
    sub->add_option("--seed", cfg.seed, "integer seed, or 'auto'")->envname("NSL_SEED");
  };

  auto* constants = app.add_subcommand("constants", "alpha2, alpha3 and beta3 with their minimizers");
  double beta_lower = -1.0 / 43.0;
  add_common(constants);
  constants->add_option("--beta-lower", beta_lower, "left endpoint of the beta3 interval");

  auto* verify = app.add_subcommand("verify", "run numerical checks: a check name or a suite (all, matlab, scalar)");
  std::vector<std::string> which;
  bool refine = false;
  add_common(verify);
  add_rho(verify);
  add_depth(verify);
  verify->add_option("which", which, "checks or suites")->required();
  verify->add_option("--grid", cfg.grid, "axis override name:min:max:count (repeatable)");
  verify->add_flag("--refine", refine, "rerun at doubled resolution and warn on instability");

  auto* stability = app.add_subcommand("stability", "evaluate a noise stability");
  stability->require_subcommand(1);
  auto* cones = stability->add_subcommand("cones", "three 120-degree sectors");
  add_common(cones);
  add_rho(cones);
  auto* arcs = stability->add_subcommand("arcs", "arc function F(theta) on one pair of circles");
  std::vector<double> thetas{2.0 * kPi / 3.0};
  int curve_points = 0;
  add_common(arcs);
  add_rho(arcs);
  add_radii(arcs);
  add_depth(arcs);
  arcs->add_option("--theta", thetas, "arc lengths to evaluate");
  arcs->add_option("--curve", curve_points, "also emit F on this many equally spaced angles in [0, 2pi]");
  auto* profile = stability->add_subcommand("profile", "radial arc profile read from JSON");
  std::string profile_path;
  bool antipodal = false;
  add_common(profile);
  add_rho(profile);
  add_depth(profile);
  profile->add_option("file", profile_path, "profile JSON")->required();
  profile->add_flag("--antipodal", antipodal, "pair each set with the antipodal copy of itself");
  auto* discrete = stability->add_subcommand("discrete", "voting rule on {1..k}^n");
  RuleArgs rule_args;
  bool discrete_mc = false;
  int influence_voter = -1;
  add_common(discrete);
  add_rho(discrete);
  add_mc(discrete);
  discrete->add_option("--rule", rule_args.rule, "plurality, majority, dictator, constant or a rule JSON file");
  discrete->add_option("--k", rule_args.k, "candidates");
  discrete->add_option("--n", rule_args.n, "voters");
  discrete->add_flag("--mc", discrete_mc, "Monte Carlo instead of exact enumeration");
  discrete->add_option("--influence", influence_voter, "also report the influence of this voter (0-based)");

  auto* lambda = app.add_subcommand("lambda", "circle kernel eigenvalues lambda_0..lambda_D");
  std::optional<double> a_arg;
  add_common(lambda);
  add_rho(lambda);
  add_radii(lambda);
  add_depth(lambda);
  lambda->add_option("--a", a_arg, "kernel argument rho r s/(1 - rho^2) given directly");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo runs: plurality, majority, discrete or gaussian");
  std::string what;
  std::vector<int> ns;
  std::string sim_profile;
  add_common(simulate);
  add_rho(simulate);
  add_mc(simulate);
  simulate->add_option("what", what, "plurality | majority | discrete | gaussian")->required();
  simulate->add_option("--n", ns, "voter counts (odd)");
  simulate->add_option("--profile", sim_profile, "profile JSON for the gaussian simulation");
  simulate->add_option("--rule", rule_args.rule, "rule for the discrete simulation");
  simulate->add_option("--k", rule_args.k, "candidates for the discrete simulation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    set_jobs(cfg.jobs);
    parse_output_format(cfg.format);
    if (*constants) return cmd_constants(cfg, beta_lower);
    if (*verify) return cmd_verify(cfg, which, refine);
    if (*cones) return cmd_cones(cfg);
    if (*arcs) return cmd_arcs(cfg, thetas, curve_points);
    if (*profile) return cmd_profile(cfg, profile_path, antipodal);
    if (*discrete) return cmd_discrete(cfg, rule_args, discrete_mc, influence_voter);
    if (*lambda) return cmd_lambda(cfg, a_arg);
    if (*simulate) {
      if (ns.size() == 1 && what == "discrete") rule_args.n = ns[0];
      return cmd_simulate(cfg, what, ns, sim_profile, rule_args);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const nsl::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
