#pragma once

#include <json.hpp>
#include <string>

#include "avgchain/analysis.hpp"
#include "avgchain/orbit_spec.hpp"
#include "avgchain/report.hpp"
#include "avgchain/shadowing.hpp"
#include "avgchain/system.hpp"

namespace avgchain {

using Json = nlohmann::json;

// Scalars serialize exactly as canonical "p/q" strings; inexact values fall
// back to JSON numbers. Every top-level document carries schema "v1".
Json scalar_json(const Scalar& s);
Scalar scalar_from_json(const Json& j);

Json system_json(const MetricSystem& sys);
MetricSystem system_from_json(const Json& j);
// "zoo:<name>" or a path to a system JSON file.
MetricSystem load_system(const std::string& ref);

Json spec_json(const OrbitSpec& spec);
// State entries may be indices or labels of `sys`.
OrbitSpec spec_from_json(const Json& j, const MetricSystem& sys);
OrbitSpec load_spec(const std::string& path, const MetricSystem& sys);

Json step_sequence_json(const MetricSystem& sys, const StepSequence& seq);
Json limsup_json(const LimsupResult& r);
Json report_json(const DecisionReport& rep, const MetricSystem& sys);
Json shadow_json(const ShadowReport& rep, const MetricSystem& sys);
Json witness_json(const FalsificationWitness& wit, const MetricSystem& sys);
Json analysis_json(const AnalysisReport& rep, const MetricSystem& sys);

// Canonical text form: sorted keys, two-space indent, trailing newline.
std::string dump_json(const Json& j);

}  // namespace avgchain
