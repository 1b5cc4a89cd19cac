#pragma once

#include <json.hpp>

#include "nuspread/core.hpp"
#include "nuspread/enumeration.hpp"
#include "nuspread/experiment.hpp"
#include "nuspread/spectrum.hpp"
#include "nuspread/spread.hpp"

namespace nuspread {

using Json = nlohmann::json;

/// Numbers or strings ("3/10", "0.3") to an exact rational. Doubles are converted exactly.
Rational json_rational(const Json& j);

ExperimentConfig parse_experiment_config(const Json& j);
ModelSpec parse_model(const Json& j);
PropertySpec parse_property(const Json& j, const ModelSpec& model);
DegreeSequence parse_degree_sequence(const Json& j);

GroundSet parse_ground(const Json& j);
ProbVector parse_prob_vector(const Json& j, const GroundSet& ground);
SubsetFamily parse_family(const Json& j, const GroundSet& ground, bool increasing = false);
SpreadMeasure parse_measure(const Json& j, const GroundSet& ground);

Json to_json(const ScanRow& r);
Json to_json(const ScanResult& r);
Json to_json(const SpectrumReport& r);
Json to_json(const McKayEstimate& e);
Json to_json(const MomentReport& r);
Json to_json(const MomentDiagnostics& d);
Json to_json(const ConditionReport& c);
Json to_json(const CoverSolution& c);
Json to_json(const SpreadVerdict& v, const GroundSet& ground);
Json to_json(const ProbVector& p);
Json edges_json(const std::vector<Edge>& edges);

}  // namespace nuspread
