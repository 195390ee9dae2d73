#pragma once

// JSON encodings of processes, script reports and law verdicts. Grades are
// written as reduced-fraction strings; objects keep insertion order so the
// output is byte-stable for identical inputs.

#include <string>

#include <json.hpp>

#include "fuzzproc/engine.hpp"
#include "fuzzproc/proclang.hpp"

namespace fuzzproc {

using Json = nlohmann::ordered_json;

inline Json to_json(const FuzzySubset& s) {
  Json out = Json::object();
  for (const auto& [label, grade] : s.entries()) out[label] = grade.to_string();
  return out;
}

inline Json to_json(const FuzzyProcess& p) {
  Json out = Json::object();
  out["delta"] = to_json(p.delta());
  out["gamma"] = to_json(p.gamma());
  return out;
}

inline Json labels_json(const Universe& u) {
  Json out = Json::array();
  for (const auto& label : u.labels()) out.push_back(label);
  return out;
}

inline Json to_json(const lang::EvalReport& report) {
  Json out = Json::object();
  out["universe"] = labels_json(report.universe);
  Json bindings = Json::object();
  for (const auto& [name, p] : report.bindings) bindings[name] = to_json(p);
  out["bindings"] = std::move(bindings);
  Json assertions = Json::array();
  for (const auto& a : report.assertions) {
    Json item = Json::object();
    item["index"] = a.index;
    item["relation"] = std::string(lang::to_string(a.relation));
    item["holds"] = a.holds;
    item["witness"] = a.witness_label ? Json(*a.witness_label) : Json(nullptr);
    assertions.push_back(std::move(item));
  }
  out["assertions"] = std::move(assertions);
  return out;
}

inline Json to_json(const Classification& c) {
  auto list = [](const std::vector<std::string>& v) {
    Json out = Json::array();
    for (const auto& s : v) out.push_back(s);
    return out;
  };
  Json out = Json::object();
  out["goals"] = list(c.goals);
  out["escapes"] = list(c.escapes);
  out["rejects"] = list(c.rejects);
  out["blockings"] = list(c.blockings);
  out["violations"] = list(c.violations);
  out["contract_set"] = list(c.contract_set);
  return out;
}

inline Json to_json(const Scope& scope) {
  Json out = Json::object();
  out["universe_size"] = scope.universe_size;
  Json grid = Json::array();
  for (const auto& g : scope.grid.grades()) grid.push_back(g.to_string());
  out["grid"] = std::move(grid);
  if (const auto* r = std::get_if<Randomized>(&scope.mode)) {
    out["search"] = "randomized";
    out["samples"] = r->samples;
    out["seed"] = r->seed;
  } else {
    out["search"] = "exhaustive";
  }
  return out;
}

inline std::string mode_name(const std::optional<EqualityMode>& mode) {
  return mode ? std::string(to_string(*mode)) : std::string("n/a");
}

inline Json to_json(const LawVerdict& v) {
  Json out = Json::object();
  out["law"] = std::string(law_name(v.law));
  out["mode"] = mode_name(v.mode);
  out["scope"] = to_json(v.scope);
  if (const auto* ok = std::get_if<Verified>(&v.result)) {
    out["result"] = "verified";
    out["cases_checked"] = ok->cases_checked;
  } else {
    const auto& cex = std::get<Counterexample>(v.result);
    out["result"] = "counterexample";
    out["universe"] = labels_json(cex.lhs.universe());
    Json witnesses = Json::array();
    for (const auto& w : cex.witnesses) witnesses.push_back(to_json(w));
    out["witnesses"] = std::move(witnesses);
    out["lhs"] = to_json(cex.lhs);
    out["rhs"] = to_json(cex.rhs);
    out["first_differing_label"] = cex.first_differing_label;
    out["note"] = cex.note;
  }
  return out;
}

/// Timing is left out unless asked for, since it would break byte-identical
/// output between runs.
inline Json to_json(const SuiteReport& report, bool with_timing = false) {
  Json out = Json::object();
  Json verdicts = Json::array();
  for (const auto& v : report.verdicts) verdicts.push_back(to_json(v));
  out["verdicts"] = std::move(verdicts);
  Json summary = Json::object();
  summary["total"] = report.verdicts.size();
  summary["verified"] = report.verdicts.size() - report.counterexamples();
  summary["counterexamples"] = report.counterexamples();
  out["summary"] = std::move(summary);
  if (with_timing) out["elapsed_ms"] = report.elapsed.count();
  return out;
}

}  // namespace fuzzproc
