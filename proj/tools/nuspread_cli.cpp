#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "nuspread/enumeration.hpp"
#include "nuspread/error.hpp"
#include "nuspread/experiment.hpp"
#include "nuspread/json_io.hpp"
#include "nuspread/matching.hpp"
#include "nuspread/spectrum.hpp"
#include "nuspread/spread.hpp"

using namespace nuspread;

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kConfigError = 2, kInfeasible = 3 };

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InvalidArgument("config file '" + path + "' is not valid JSON: " + e.what());
  }
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw InvalidArgument("cannot write '" + out + "'");
  f << text;
}

struct RunFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<int> threads;
  std::string out;
  std::string format;
  bool no_timing = false;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--config", f.config, "experiment config (JSON)")->required();
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--trials", f.trials, "trials per point");
  cmd->add_option("--threads", f.threads, "worker threads (0: all cores)");
  cmd->add_option("--out", f.out, "output file (default: config \"out\" or stdout)");
  cmd->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--no-timing", f.no_timing, "write wall_ms = 0 for byte-identical output");
}

ExperimentConfig load_config(const RunFlags& f) {
  ExperimentConfig c = parse_experiment_config(load_json(f.config));
  if (f.seed) c.seed = *f.seed;
  if (f.trials) {
    if (*f.trials < 1) throw InvalidArgument("trials must be at least 1");
    c.trials = *f.trials;
  }
  if (f.threads) c.threads = *f.threads;
  if (!f.out.empty()) c.out = f.out;
  if (!f.format.empty()) c.format = f.format;
  if (f.no_timing) c.timing = false;
  return c;
}

void write_scan(const ExperimentConfig& c, const ScanResult& r) {
  emit(c.format == "json" ? to_json(r).dump(2) + "\n" : format_csv(r.rows), c.out);
}

int run_scan(const RunFlags& f) {
  ExperimentConfig c = load_config(f);
  write_scan(c, threshold_scan(c));
  return kOk;
}

int run_estimate(const RunFlags& f, std::optional<double> param) {
  ExperimentConfig c = load_config(f);
  ScanResult r;
  r.rows.push_back(mc_estimate(c, param, 0));
  if (r.rows[0].estimate >= 0.5) r.summary.crossing = r.rows[0].param;
  r.summary.alpha_star_trajectory.push_back(r.rows[0].alpha_star);
  write_scan(c, r);
  return kOk;
}

int run_spectrum(const std::string& config, std::optional<double> alpha, const std::string& out) {
  Json j = load_json(config);
  ModelSpec m = parse_model(j.contains("model") && j.at("model").is_object() ? j.at("model") : j);
  auto b = model_block_structure(m);
  if (!b) throw InvalidArgument("spectrum needs an sbm or chung_lu model");
  Json result;
  if (alpha) {
    Graph g = build_spectrum(*b, *alpha);
    PmResult pm = perfect_matching(g);
    result = Json{{"alpha", *alpha},
                  {"edges", g.edge_count()},
                  {"has_perfect_matching", pm.has_perfect_matching},
                  {"reason", to_string(pm.reason)},
                  {"witness_matching", edges_json(pm.witness)}};
  } else {
    result = to_json(critical_alpha(*b));
  }
  emit(result.dump(2) + "\n", out);
  return kOk;
}

int run_spread_audit(const std::string& config, const std::string& out) {
  Json j = load_json(config);
  GroundSet ground = parse_ground(j.at("ground"));
  SubsetFamily h = parse_family(j.at("h"), ground);
  ProbVector q = parse_prob_vector(j.at("q"), ground);
  Json result;
  result["cover_value"] = to_json(cover_value_exact(h, q));
  if (ground.size() <= kFractionalCoverLimit) result["fractional_cover_value"] = to_json(fractional_cover_value(h, q));
  if (j.contains("nu")) {
    SpreadMeasure nu = parse_measure(j.at("nu"), ground);
    SpreadVerdict v = verify_q_spread(nu, q, h);
    result["q_spread"] = to_json(v, ground);
    if (v.ok) result["cover_value_at_least_half"] = spread_implies_half(nu, q, h);
  }
  emit(result.dump(2) + "\n", out);
  return kOk;
}

int run_moments(const std::string& config, const std::string& out) {
  Json j = load_json(config);
  DegreeSequence d = parse_degree_sequence(j);
  std::vector<double> ts = j.value("tail_points", std::vector<double>{0.0});
  Json result;
  result["conditions"] = to_json(condition_report(d, j.value("delta", 0.5)));
  if (d.is_bivalued()) {
    GndMomentOptions opts;
    opts.tail_points = ts;
    const std::string method = j.value("method", std::string(d.n() <= kCountExactMaxVertices &&
                                                                      d.norm1() <= kCountExactMaxDegreeSum
                                                                  ? "exact"
                                                                  : "asymptotic"));
    opts.method = method == "exact" ? MomentMethod::exact : MomentMethod::asymptotic;
    opts.enforce_validity = j.value("enforce_validity", false);
    result["gnd_isolated"] = to_json(gnd_isolated_moments(d, opts));
    if (!d.has_zero()) {
      result["chung_lu_d1"] = to_json(chung_lu_obstruction_moments(d, ObstructionCase::d1, false, ts));
      result["chung_lu_d2"] = to_json(chung_lu_obstruction_moments(d, ObstructionCase::d2, false, ts));
    }
    if (d.class_values()[1] >= 1) result["diagnostics"] = to_json(moment_diagnostics(d));
  }
  if (d.class_count() >= 2 && !d.has_zero()) {
    result["chung_lu_k_valued"] = to_json(chung_lu_obstruction_moments(d, ObstructionCase::k_valued, false, ts));
  }
  emit(result.dump(2) + "\n", out);
  return kOk;
}

int run_enumerate(const std::string& config, const std::string& degrees, const std::string& out) {
  DegreeSequence d;
  if (!degrees.empty()) {
    std::vector<int> v;
    std::stringstream ss(degrees);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        v.push_back(std::stoi(tok));
      } catch (const std::exception&) {
        throw InvalidArgument("bad degree '" + tok + "'");
      }
    }
    d = DegreeSequence(v);
  } else {
    d = parse_degree_sequence(load_json(config));
  }
  Json result{{"degrees", d.degrees()}, {"graphical", is_graphical(d.degrees())}};
  result["count_exact"] = to_string(count_graphs_exact(d));
  if (d.norm1() % 2 == 0 && !d.has_zero() && d.n() > 0) result["mckay"] = to_json(mckay_count(d));
  emit(result.dump(2) + "\n", out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-uniform threshold experiments: spectra, spread certificates, moments"};
  app.require_subcommand(1);

  RunFlags scan_flags;
  auto* scan = app.add_subcommand("scan", "threshold scan over the config's grid");
  add_run_flags(scan, scan_flags);

  RunFlags est_flags;
  std::optional<double> est_param;
  auto* estimate = app.add_subcommand("estimate", "Monte Carlo estimate at one point");
  add_run_flags(estimate, est_flags);
  estimate->add_option("--param", est_param, "scan parameter value");

  std::string scenario_name;
  std::vector<int> scenario_n;
  ScenarioOptions sopts;
  bool scenario_no_timing = false;
  auto* scenario = app.add_subcommand("scenario", "run a named scenario");
  scenario->add_option("name", scenario_name, "scenario id")->required();
  scenario->add_option("--n", scenario_n, "vertex counts (ladder)")->delimiter(',');
  scenario->add_option("--trials", sopts.trials, "trials per point");
  scenario->add_option("--seed", sopts.seed, "master seed");
  scenario->add_option("--threads", sopts.threads, "worker threads");
  scenario->add_option("--out", sopts.out_dir, "output directory");
  scenario->add_flag("--no-timing", scenario_no_timing, "write wall_ms = 0");

  std::string spec_config;
  std::optional<double> spec_alpha;
  std::string spec_out;
  auto* spectrum = app.add_subcommand("spectrum", "critical alpha or the spectrum at one alpha");
  spectrum->add_option("--config", spec_config, "model descriptor (JSON)")->required();
  spectrum->add_option("--alpha", spec_alpha, "build the spectrum at this alpha");
  spectrum->add_option("--out", spec_out, "output file");

  std::string audit_config;
  std::string audit_out;
  auto* audit = app.add_subcommand("spread-audit", "cover values and q-spread verification");
  audit->add_option("--config", audit_config, "instance (JSON)")->required();
  audit->add_option("--out", audit_out, "output file");

  std::string mom_config;
  std::string mom_out;
  auto* moments = app.add_subcommand("moments", "obstruction moments, diagnostics and condition ratios");
  moments->add_option("--config", mom_config, "degree sequence (JSON)")->required();
  moments->add_option("--out", mom_out, "output file");

  std::string enum_config;
  std::string enum_degrees;
  std::string enum_out;
  auto* enumerate = app.add_subcommand("enumerate", "exact and asymptotic degree-sequence counts");
  enumerate->add_option("--config", enum_config, "degree sequence (JSON)");
  enumerate->add_option("--degrees", enum_degrees, "comma-separated degrees");
  enumerate->add_option("--out", enum_out, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*scan) return run_scan(scan_flags);
    if (*estimate) return run_estimate(est_flags, est_param);
    if (*scenario) {
      sopts.n_values = scenario_n;
      sopts.timing = !scenario_no_timing;
      ScenarioResult r = scenario_run(scenario_name, sopts);
      for (const auto& f : r.files) std::cout << f << "\n";
      return kOk;
    }
    if (*spectrum) return run_spectrum(spec_config, spec_alpha, spec_out);
    if (*audit) return run_spread_audit(audit_config, audit_out);
    if (*moments) return run_moments(mom_config, mom_out);
    if (*enumerate) {
      if (enum_config.empty() && enum_degrees.empty()) throw InvalidArgument("enumerate needs --config or --degrees");
      return run_enumerate(enum_config, enum_degrees, enum_out);
    }
  } catch (const InfeasibleSize& e) {
    std::cerr << "infeasible size: " << e.what() << "\n";
    return kInfeasible;
  } catch (const InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const Json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kOk;
}
