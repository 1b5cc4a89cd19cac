#include "nuspread/json_io.hpp"

#include <cmath>

#include "nuspread/error.hpp"

namespace nuspread {

Rational json_rational(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(BigInt(std::to_string(j.get<long long>())));
  if (j.is_number()) return from_double(j.get<double>());
  throw InvalidArgument("expected a number or a rational string, got " + j.dump());
}

namespace {

double json_double(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_rational(j.get<std::string>()).get_d();
  throw InvalidArgument("expected a number, got " + j.dump());
}

std::vector<double> parse_grid(const Json& j) {
  std::vector<double> grid;
  if (j.contains("grid")) {
    for (const auto& v : j.at("grid")) grid.push_back(json_double(v));
  } else if (j.contains("from") && j.contains("to") && j.contains("steps")) {
    const double from = json_double(j.at("from"));
    const double to = json_double(j.at("to"));
    const int steps = j.at("steps").get<int>();
    if (steps < 1) throw InvalidArgument("scan steps must be at least 1");
    for (int i = 0; i < steps; ++i) {
      grid.push_back(steps == 1 ? from : from + (to - from) * i / (steps - 1));
    }
  }
  if (grid.empty()) throw InvalidArgument("scan grid must be nonempty");
  return grid;
}

}  // namespace

DegreeSequence parse_degree_sequence(const Json& j) {
  if (j.is_array()) return DegreeSequence(j.get<std::vector<int>>());
  if (j.contains("degrees")) return DegreeSequence(j.at("degrees").get<std::vector<int>>());
  if (j.contains("classes")) {
    std::vector<std::pair<int, int>> classes;
    for (const auto& c : j.at("classes")) classes.emplace_back(c.at(0).get<int>(), c.at(1).get<int>());
    return DegreeSequence::from_classes(classes);
  }
  throw InvalidArgument("degree sequence needs \"degrees\" or \"classes\"");
}

ModelSpec parse_model(const Json& j) {
  ModelSpec m;
  m.model = j.at("model").get<std::string>();
  if (m.model == "sbm") {
    m.block_sizes = j.at("blocks").get<std::vector<int>>();
    const std::size_t k = m.block_sizes.size();
    if (j.contains("P")) {
      for (const auto& row : j.at("P")) {
        std::vector<double> r;
        for (const auto& v : row) r.push_back(json_double(v));
        m.p.push_back(std::move(r));
      }
    } else if (j.contains("p_log_scaled")) {
      int n = 0;
      for (int s : m.block_sizes) n += s;
      const double v = json_double(j.at("p_log_scaled")) * std::log(static_cast<double>(n)) / n;
      m.p.assign(k, std::vector<double>(k, std::min(1.0, v)));
    } else if (j.contains("p")) {
      m.p.assign(k, std::vector<double>(k, json_double(j.at("p"))));
    } else {
      throw InvalidArgument("sbm model needs \"P\", \"p\" or \"p_log_scaled\"");
    }
    BlockStructure::contiguous(m.block_sizes, m.p);
  } else if (m.model == "chung_lu" || m.model == "gnd") {
    DegreeSequence d = parse_degree_sequence(j);
    for (std::size_t i = 0; i < d.class_values().size(); ++i) {
      m.degree_classes.emplace_back(d.class_values()[i], d.class_sizes()[i]);
    }
    if (j.contains("max_attempts")) m.gnd_options.max_attempts = j.at("max_attempts").get<int>();
    if (j.contains("switching_fallback")) m.gnd_options.switching_fallback = j.at("switching_fallback").get<bool>();
  } else if (m.model == "product") {
    std::vector<std::string> items = j.at("items").get<std::vector<std::string>>();
    std::vector<Rational> probs;
    for (const auto& v : j.at("p")) probs.push_back(json_rational(v));
    if (items.size() != probs.size()) throw InvalidArgument("product model: items and p differ in length");
    // Values follow the caller's item order; realign to the canonical order.
    m.ground = GroundSet(items);
    m.item_probs.assign(items.size(), 0);
    for (std::size_t i = 0; i < items.size(); ++i) m.item_probs[m.ground.require_index(items[i])] = probs[i];
    ProbVector(m.ground, m.item_probs);
    if (j.contains("n")) m.n = j.at("n").get<int>();
  } else {
    throw InvalidArgument("unknown model '" + m.model + "'");
  }
  return m;
}

PropertySpec parse_property(const Json& j, const ModelSpec& model) {
  PropertySpec p;
  if (j.is_string()) {
    p.kind = j.get<std::string>();
  } else {
    p.kind = j.at("kind").get<std::string>();
    if (j.contains("block")) p.block = j.at("block").get<int>();
    if (j.contains("scope")) {
      const auto s = j.at("scope").get<std::string>();
      if (s == "global") {
        p.scope = IsolationScope::global;
      } else if (s == "within_block") {
        p.scope = IsolationScope::within_block;
      } else {
        throw InvalidArgument("unknown isolation scope '" + s + "'");
      }
    }
    if (p.kind == "custom") {
      if (model.model != "product") throw InvalidArgument("custom families require the product model");
      p.family = parse_family(j.at("members"), model.ground, j.value("increasing", false));
    }
  }
  if (p.kind != "perfect_matching" && p.kind != "isolated_vertex_exists" && p.kind != "custom") {
    throw InvalidArgument("unknown property '" + p.kind + "'");
  }
  if (p.kind == "custom" && !p.family) throw InvalidArgument("custom property needs \"members\"");
  if (model.model == "product" && p.kind != "custom" && model.n <= 0) {
    throw InvalidArgument("graph properties on the product model need \"n\" and edge items \"u-v\"");
  }
  return p;
}

ExperimentConfig parse_experiment_config(const Json& j) {
  ExperimentConfig c;
  c.model = parse_model(j.at("model"));
  c.property = parse_property(j.value("property", Json("perfect_matching")), c.model);
  if (j.contains("scan")) {
    ScanSpec s;
    s.param = j.at("scan").at("param").get<std::string>();
    s.grid = parse_grid(j.at("scan"));
    c.scan = s;
  }
  c.trials = j.value("trials", 100);
  if (c.trials < 1) throw InvalidArgument("trials must be at least 1");
  c.seed = j.value("seed", std::uint64_t{1});
  c.out = j.value("out", std::string());
  c.format = j.value("format", std::string("csv"));
  if (c.format != "csv" && c.format != "json") throw InvalidArgument("format must be csv or json");
  c.threads = j.value("threads", 0);
  c.timing = j.value("timing", true);
  c.alpha_star = j.value("alpha_star", true);
  return c;
}

GroundSet parse_ground(const Json& j) { return GroundSet(j.get<std::vector<std::string>>()); }

ProbVector parse_prob_vector(const Json& j, const GroundSet& ground) {
  std::vector<Rational> values(ground.size());
  if (j.is_object()) {
    if (j.size() != ground.size()) throw InvalidArgument("probability map must cover the ground set exactly");
    for (const auto& [key, v] : j.items()) values[ground.require_index(key)] = json_rational(v);
  } else if (j.is_array()) {
    if (j.size() != ground.size()) throw InvalidArgument("probability list must match the ground set");
    for (std::size_t i = 0; i < j.size(); ++i) values[i] = json_rational(j[i]);
  } else {
    Rational v = json_rational(j);
    values.assign(ground.size(), v);
  }
  return ProbVector(ground, std::move(values));
}

SubsetFamily parse_family(const Json& j, const GroundSet& ground, bool increasing) {
  std::vector<std::vector<std::string>> members;
  for (const auto& m : j) members.push_back(m.get<std::vector<std::string>>());
  return SubsetFamily::from_names(ground, members, increasing);
}

SpreadMeasure parse_measure(const Json& j, const GroundSet& ground) {
  SpreadMeasure nu;
  nu.ground = ground;
  for (const auto& m : j.at("support")) nu.support.push_back(ground.mask_of(m.get<std::vector<std::string>>()));
  for (const auto& w : j.at("weights")) nu.weights.push_back(json_rational(w));
  return nu;
}

// ---------------------------------------------------------------------------

namespace {

Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json family_json(const SubsetFamily& f) {
  Json out = Json::array();
  for (Subset s : f.members()) out.push_back(f.ground().names_of(s));
  return out;
}

}  // namespace

Json to_json(const ScanRow& r) {
  return Json{{"param", r.param},         {"trials", r.trials}, {"successes", r.successes},
              {"estimate", r.estimate},   {"ci_lo", r.ci_lo},   {"ci_hi", r.ci_hi},
              {"alpha_star", number_or_null(r.alpha_star)}, {"wall_ms", r.wall_ms}};
}

Json to_json(const ScanResult& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) rows.push_back(to_json(row));
  Json traj = Json::array();
  for (double a : r.summary.alpha_star_trajectory) traj.push_back(number_or_null(a));
  return Json{{"rows", rows},
              {"summary",
               {{"crossing", r.summary.crossing ? Json(*r.summary.crossing) : Json(nullptr)},
                {"alpha_star_trajectory", traj}}}};
}

Json edges_json(const std::vector<Edge>& edges) {
  Json out = Json::array();
  for (auto [u, v] : edges) out.push_back(edge_name(u, v));
  return out;
}

Json to_json(const SpectrumReport& r) {
  return Json{{"status", r.status},
              {"alpha_star", r.alpha_star},
              {"candidate_alphas", r.candidate_alphas},
              {"witness_matching", edges_json(r.witness_matching)}};
}

Json to_json(const McKayEstimate& e) {
  return Json{{"leading", to_string(e.leading)},       {"lambda", to_string(e.lambda)},
              {"delta_hat", to_string(e.delta_hat)},   {"valid", e.valid},
              {"estimate", number_or_null(e.estimate)}, {"log_estimate", e.log_estimate}};
}

Json to_json(const MomentReport& r) {
  Json tail = Json::array();
  for (auto [t, b] : r.chebyshev_tail) tail.push_back(Json{{"t", t}, {"bound", b}});
  Json out{{"method", r.method},     {"ex", r.ex},           {"exx", r.exx},       {"ratio", r.ratio},
           {"variance", r.variance}, {"chebyshev_tail", tail}, {"all_valid", r.all_valid}};
  if (r.ex_exact) out["ex_exact"] = to_string(*r.ex_exact);
  if (r.exx_exact) out["exx_exact"] = to_string(*r.exx_exact);
  return out;
}

Json to_json(const MomentDiagnostics& d) {
  auto term = [](const ZTerm& z) {
    return Json{{"w", z.w},
                {"T", to_string(z.t)},
                {"A_prime", z.a_prime.get_d()},
                {"B_prime", z.b_prime.get_d()},
                {"Z", z.z.get_d()},
                {"Z_exact", to_string(z.z)}};
  };
  Json second = Json::array();
  for (const auto& z : d.second) second.push_back(term(z));
  Json reduced = Json::array();
  for (const auto& z : d.z_second_reduced) reduced.push_back(z.get_d());
  return Json{{"A", to_string(d.a)},
              {"Z_first", term(d.first)},
              {"Z_second", second},
              {"max_abs_Z_second", d.max_abs_second.get_d()},
              {"Z_first_reduced", d.z_first_reduced.get_d()},
              {"Z_second_reduced", reduced}};
}

Json to_json(const ConditionReport& c) {
  auto opt = [](const std::optional<double>& v) { return v ? number_or_null(*v) : Json(nullptr); };
  return Json{{"n", c.n},
              {"bivalued", c.bivalued},
              {"d1_sq_over_norm", number_or_null(c.d1_sq_over_norm)},
              {"dn_over_log_n", number_or_null(c.dn_over_log_n)},
              {"d2_sq_over_n1", opt(c.d2_sq_over_n1)},
              {"d1_sq_over_sqrt_n_d2", opt(c.d1_sq_over_sqrt_n_d2)},
              {"log_n_over_d2", opt(c.log_n_over_d2)},
              {"n2_sq_d2_cube_over_norm_sq", opt(c.n2_sq_d2_cube_over_norm_sq)},
              {"n1_over_n_delta", opt(c.n1_over_n_delta)},
              {"delta", c.delta},
              {"warnings", c.warnings}};
}

Json to_json(const CoverSolution& c) {
  Json out{{"value", to_string(c.value)}, {"value_float", c.value.get_d()}, {"cover", family_json(c.cover)}};
  if (!c.fractional_weights.empty() || !c.dual_weights.empty()) {
    Json g = Json::array();
    for (const auto& [s, w] : c.fractional_weights) {
      g.push_back(Json{{"set", c.cover.ground().names_of(s)}, {"weight", to_string(w)}});
    }
    Json nu = Json::array();
    for (const auto& [s, w] : c.dual_weights) {
      nu.push_back(Json{{"set", c.cover.ground().names_of(s)}, {"weight", to_string(w)}});
    }
    out["fractional_weights"] = g;
    out["dual_weights"] = nu;
  }
  return out;
}

Json to_json(const SpreadVerdict& v, const GroundSet& ground) {
  Json out{{"ok", v.ok}};
  if (v.violating) {
    out["violating"] = ground.names_of(*v.violating);
    out["lhs"] = to_string(v.lhs);
    out["rhs"] = to_string(v.rhs);
  }
  return out;
}

Json to_json(const ProbVector& p) {
  Json out = Json::object();
  for (std::size_t i = 0; i < p.size(); ++i) out[p.ground().item(i)] = to_string(p[i]);
  return out;
}

}  // namespace nuspread
