#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nuspread/core.hpp"
#include "nuspread/enumeration.hpp"
#include "nuspread/error.hpp"
#include "nuspread/experiment.hpp"
#include "nuspread/json_io.hpp"
#include "nuspread/matching.hpp"
#include "nuspread/spectrum.hpp"
#include "nuspread/spread.hpp"

namespace py = pybind11;
using namespace nuspread;

// Structured arguments and results cross the boundary as JSON text; the Python package
// decodes them and turns "p/q" strings into Fractions.
namespace {

Json parse(const std::string& text) { return Json::parse(text); }

std::string dump(const Json& j) { return j.dump(); }

Json subsets_json(const SubsetFamily& f) {
  Json out = Json::array();
  for (Subset s : f.members()) out.push_back(f.ground().names_of(s));
  return out;
}

Json prob_json(const ProbVector& p) {
  Json out = Json::object();
  for (std::size_t i = 0; i < p.size(); ++i) out[p.ground().item(i)] = to_string(p[i]);
  return out;
}

BlockStructure blocks_from(const Json& j) {
  std::vector<std::vector<double>> p = j.at("P").get<std::vector<std::vector<double>>>();
  return BlockStructure::contiguous(j.at("sizes").get<std::vector<int>>(), p);
}

std::vector<Edge> edges_from(const Json& j) {
  std::vector<Edge> out;
  for (const auto& e : j) out.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Non-uniform threshold toolkit: exact measures, spectra, spread certificates, moments";

  static py::exception<Error> base(m, "NuspreadError");
  static py::exception<InvalidArgument> invalid(m, "InvalidArgument", base.ptr());
  static py::exception<InfeasibleSize> infeasible(m, "InfeasibleSize", base.ptr());
  static py::exception<BudgetExhausted> budget(m, "BudgetExhausted", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InvalidArgument& e) {
      py::set_error(invalid, e.what());
    } catch (const InfeasibleSize& e) {
      py::set_error(infeasible, e.what());
    } catch (const BudgetExhausted& e) {
      py::set_error(budget, e.what());
    } catch (const Error& e) {
      py::set_error(base, e.what());
    } catch (const Json::exception& e) {
      py::set_error(invalid, e.what());
    }
  });

  m.attr("ENUMERATION_LIMIT") = kEnumerationLimit;
  m.attr("TRANSFORM_LOG_BASE") = kTransformLogBase;

  m.def("mu_exact", [](const std::string& req) {
    Json j = parse(req);
    GroundSet g = parse_ground(j.at("ground"));
    return to_string(mu_exact(parse_family(j.at("family"), g), parse_prob_vector(j.at("p"), g)));
  });
  m.def("up_closure", [](const std::string& req) {
    Json j = parse(req);
    GroundSet g = parse_ground(j.at("ground"));
    return dump(subsets_json(up_closure(parse_family(j.at("generators"), g))));
  });
  m.def("expected_cover_count", [](const std::string& req) {
    Json j = parse(req);
    GroundSet g = parse_ground(j.at("ground"));
    return to_string(expected_cover_count(parse_family(j.at("family"), g), parse_prob_vector(j.at("q"), g)));
  });
  m.def("t_ell_transform", [](const std::string& req) {
    Json j = parse(req);
    GroundSet g = parse_ground(j.at("ground"));
    return dump(prob_json(t_ell_transform(parse_prob_vector(j.at("q"), g), j.at("ell").get<int>())));
  });
  m.def("boost_vector", [](const std::string& req) {
    Json j = parse(req);
    GroundSet g = parse_ground(j.at("ground"));
    return dump(prob_json(boost_vector(parse_prob_vector(j.at("p"), g), j.at("k").get<int>())));
  });
  m.def("faithful_threshold_map", [](const std::string& req) {
    Json j = parse(req);
    GroundSet g = parse_ground(j.at("ground"));
    return to_string(faithful_threshold_map(parse_family(j.at("family"), g, true), parse_prob_vector(j.at("p"), g)));
  });

  m.def("perfect_matching", [](int n, const std::string& edges) {
    PmResult r = perfect_matching(Graph(n, edges_from(parse(edges))));
    return dump(Json{{"has_perfect_matching", r.has_perfect_matching},
                     {"reason", to_string(r.reason)},
                     {"witness", edges_json(r.witness)}});
  });
  m.def("brute_force_pm_oracle",
        [](int n, const std::string& edges) { return brute_force_pm_oracle(Graph(n, edges_from(parse(edges)))); });

  m.def("build_spectrum", [](const std::string& blocks, double alpha) {
    return dump(edges_json(build_spectrum(blocks_from(parse(blocks)), alpha).edges()));
  });
  m.def("critical_alpha",
        [](const std::string& blocks) { return dump(to_json(critical_alpha(blocks_from(parse(blocks))))); });
  m.def("bivalued_spectrum_pm", [](const std::vector<int>& degrees, double alpha) {
    return bivalued_spectrum_pm(DegreeSequence(degrees), alpha);
  });

  m.def("cover_value", [](const std::string& req, bool fractional) {
    Json j = parse(req);
    GroundSet g = parse_ground(j.at("ground"));
    SubsetFamily h = parse_family(j.at("h"), g);
    ProbVector q = parse_prob_vector(j.at("q"), g);
    return dump(to_json(fractional ? fractional_cover_value(h, q) : cover_value_exact(h, q)));
  });
  m.def("verify_q_spread", [](const std::string& req) {
    Json j = parse(req);
    GroundSet g = parse_ground(j.at("ground"));
    return dump(to_json(verify_q_spread(parse_measure(j.at("nu"), g), parse_prob_vector(j.at("q"), g),
                                        parse_family(j.at("h"), g)),
                        g));
  });
  m.def("block_permutation_spread_prob", [](const std::string& req) {
    Json j = parse(req);
    const int n = j.at("n").get<int>();
    SpreadMode mode = j.value("mode", std::string("closed_form")) == "brute_force" ? SpreadMode::brute_force
                                                                                    : SpreadMode::closed_form;
    std::vector<int> sizes = j.value("sizes", std::vector<int>{n});
    std::vector<std::vector<double>> p(sizes.size(), std::vector<double>(sizes.size(), 1.0));
    return to_string(block_permutation_spread_prob(Graph(n, edges_from(j.at("h"))), BlockStructure::contiguous(sizes, p),
                                                   edges_from(j.at("s")), mode));
  });

  m.def("count_graphs_exact",
        [](const std::vector<int>& degrees) { return to_string(count_graphs_exact(DegreeSequence(degrees))); });
  m.def("mckay_count", [](const std::vector<int>& degrees) { return dump(to_json(mckay_count(DegreeSequence(degrees)))); });
  m.def("gnd_isolated_moments", [](const std::vector<int>& degrees, const std::string& method, bool enforce_validity) {
    GndMomentOptions o;
    o.method = method == "asymptotic" ? MomentMethod::asymptotic : MomentMethod::exact;
    o.enforce_validity = enforce_validity;
    return dump(to_json(gnd_isolated_moments(DegreeSequence(degrees), o)));
  });
  m.def("moment_diagnostics",
        [](const std::vector<int>& degrees) { return dump(to_json(moment_diagnostics(DegreeSequence(degrees)))); });
  m.def("condition_report", [](const std::vector<int>& degrees, double delta) {
    return dump(to_json(condition_report(DegreeSequence(degrees), delta)));
  });

  m.def("mc_estimate", [](const std::string& config) {
    ExperimentConfig c = parse_experiment_config(parse(config));
    py::gil_scoped_release release;
    return dump(to_json(mc_estimate(c)));
  });
  m.def("threshold_scan", [](const std::string& config) {
    ExperimentConfig c = parse_experiment_config(parse(config));
    py::gil_scoped_release release;
    return dump(to_json(threshold_scan(c)));
  });
  m.def("scenario_names", &scenario_names);
  m.def("scenario_run", [](const std::string& name, const std::string& options) {
    Json j = parse(options);
    ScenarioOptions o;
    o.n_values = j.value("n_values", std::vector<int>{});
    o.trials = j.value("trials", 0);
    o.seed = j.value("seed", std::uint64_t{1});
    o.threads = j.value("threads", 0);
    o.timing = j.value("timing", true);
    o.out_dir = j.value("out_dir", std::string("."));
    py::gil_scoped_release release;
    ScenarioResult r = scenario_run(name, o);
    return r.summary_json;
  });
}
