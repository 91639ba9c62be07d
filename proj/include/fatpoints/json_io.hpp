#pragma once

// JSON encodings of certificates, verdicts and reports (nlohmann/json).
// Objects are key-sorted, so equal values always dump to identical bytes.

#include <json.hpp>

#include "fatpoints/containment.hpp"
#include "fatpoints/oracle.hpp"
#include "fatpoints/reduction.hpp"
#include "fatpoints/search.hpp"
#include "fatpoints/speciality.hpp"

namespace fatpoints {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// BigInt values are emitted as JSON numbers when they fit in 64 bits, else as strings.
inline json big_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<Int>::min() && v <= std::numeric_limits<Int>::max())
    return v.convert_to<Int>();
  return v.str();
}

inline json to_json(const ReductionStep& step) {
  json reducers = json::array();
  for (const auto& r : step.reducers) reducers.push_back({{"position", r.position}, {"value", r.value}});
  return {{"m", step.m},
          {"input", step.input.entries()},
          {"reducers", reducers},
          {"reducers_by_position", step.reducers_by_position()},
          {"output", step.output.entries()}};
}

inline json to_json(const ReductionFailure& f) {
  json j = {{"reason", to_string(f.reason)}, {"m", f.m}, {"input", f.input.entries()}, {"message", f.describe()}};
  if (f.reason == FailureReason::FlatTail) {
    json partial = json::array();
    for (const auto& r : f.partial_reducers) partial.push_back({{"position", r.position}, {"value", r.value}});
    j["stop_index"] = f.stop_index;
    j["consumed_at"] = f.consumed_at;
    j["repeated_reducer"] = f.repeated_reducer;
    j["witness"] = {f.witness.first, f.witness.second};
    j["partial_reducers"] = partial;
  }
  return j;
}

inline json to_json(const ReductionCertificate& c) {
  json steps = json::array();
  for (const auto& s : c.steps) steps.push_back(to_json(s));
  return {{"initial", c.initial.entries()}, {"steps", steps}, {"final", c.final.entries()}, {"final_size", c.final_size}};
}

inline json to_json(const ChainFailure& f) {
  json steps = json::array();
  for (const auto& s : f.completed) steps.push_back(to_json(s));
  return {{"step_index", f.step_index}, {"failure", to_json(f.failure)}, {"completed_steps", steps}};
}

inline json to_json(const SpecialityVerdict& v) {
  json j = {{"d", v.d},
            {"mults", v.mults.values()},
            {"nonspecial", to_string(v.nonspecial)},
            {"effective", to_string(v.effective)},
            {"h1_regular", to_string(v.h1_regular)},
            {"route", to_string(v.route)},
            {"order", v.order},
            {"orders_tried", v.orders_tried},
            {"detail", v.detail},
            {"certificate", nullptr}};
  if (v.certificate) j["certificate"] = to_json(*v.certificate);
  if (v.failure) j["failure"] = to_json(*v.failure);
  return j;
}

inline json to_json(const Fact& f) {
  return {{"name", f.name}, {"statement", f.statement}, {"holds", f.holds}, {"essential", f.essential}};
}

inline json to_json(const ContainmentVerdict& v) {
  json facts = json::array();
  for (const auto& f : v.facts) facts.push_back(to_json(f));
  json branches = json::array();
  for (auto b : v.branches) branches.push_back(to_string(b));
  json j = {{"proven", v.proven},
            {"route", to_string(v.route)},
            {"witness_d", nullptr},
            {"branch", nullptr},
            {"branches", branches},
            {"facts", facts},
            {"diagnostics", v.diagnostics}};
  if (v.witness_d) j["witness_d"] = *v.witness_d;
  if (v.branch) j["branch"] = to_string(*v.branch);
  return j;
}

inline json to_json(const oracle::DimReport& r) {
  return {{"d", r.d},
          {"mults", r.mults},
          {"rows", r.rows},
          {"cols", r.cols},
          {"max_rank", r.max_rank},
          {"dim_observed", r.dim_observed},
          {"vdim", big_to_json(r.vdim)},
          {"edim", big_to_json(r.edim)},
          {"certificate", oracle::to_string(r.certificate)},
          {"trials_run", r.trials_run},
          {"prime", r.options.prime},
          {"seed", r.options.seed},
          {"trials", r.options.trials}};
}

inline json to_json(const oracle::AlphaReport& r) {
  return {{"scaled_mults", r.scaled},
          {"alpha_lb", r.alpha_lb},
          {"alpha_observed", r.alpha_observed},
          {"alpha_certified", r.alpha_certified}};
}

inline json to_json(const oracle::TruncatedContainmentReport& r) {
  json degrees = json::array();
  for (const auto& d : r.degrees)
    degrees.push_back({{"t", d.t}, {"dim_symbolic", d.dim_symbolic}, {"dim_target", d.dim_target}, {"contained", d.contained}});
  json points = json::array();
  for (const auto& [u, v] : r.config.points) points.push_back({u, v});
  return {{"mults", r.mults}, {"r", r.r}, {"t_max", r.t_max}, {"holds", r.holds()},
          {"degrees", degrees}, {"points", points}, {"prime", r.config.prime}, {"seed", r.config.seed}};
}

inline json to_json(const search::GridReport& r) {
  json cells = json::array();
  for (const auto& c : r.cells)
    cells.push_back({{"lemma", c.lemma}, {"params", c.params}, {"pass", c.pass}, {"value", c.value}});
  return {{"cells", cells}, {"total", r.cells.size()}, {"failures", r.failures()}, {"all_pass", r.all_pass()}};
}

inline json to_json(const search::ScanReport& r) {
  json fails = json::array();
  for (const auto& f : r.failures) fails.push_back(f.str());
  return {{"cells", r.cells}, {"failures", fails}};
}

inline json to_json(const search::CrosscheckReport& r) {
  json viol = json::array();
  for (const auto& v : r.violations)
    viol.push_back({{"d", v.d}, {"mults", v.mults}, {"prover", v.prover}, {"dim_observed", v.dim_observed}, {"edim", v.edim}});
  return {{"cells", r.cells},
          {"chain_proofs", r.chain_proofs},
          {"criterion_proofs", r.criterion_proofs},
          {"oracle_checks", r.oracle_checks},
          {"violations", viol}};
}

/// Wraps a payload with the command name and schema version.
inline json envelope(const std::string& command, json payload) {
  return {{"schema_version", kSchemaVersion}, {"command", command}, {"result", std::move(payload)}};
}

}  // namespace fatpoints
