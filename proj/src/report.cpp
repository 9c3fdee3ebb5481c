#include "chorc/report.hpp"

namespace chorc {

using nlohmann::json;

namespace {

template <class ProcName>
json record(const TraceRecord<ProcName>& r) {
  json actors = json::array();
  for (const auto& p : participants(r.rich)) actors.push_back(p.str());
  return {{"step", r.step},
          {"richLabel", to_string(r.rich)},
          {"label", to_string(r.label)},
          {"actors", actors},
          {"stateDigest", digest_hex(r.post_digest)}};
}

json located(json j, const AstPath& path, const SourceUnit& unit) {
  j["path"] = path;
  if (auto it = unit.spans.find(path); it != unit.spans.end()) {
    j["line"] = it->second.begin.line;
    j["col"] = it->second.begin.col;
  }
  return j;
}

}  // namespace

json to_json(const State& s) {
  json out = json::object();
  for (const auto& [cell, v] : s.cells()) out[cell.first.str() + "." + cell.second.str()] = v;
  return out;
}

json to_json(const Network& n) {
  json out = json::object();
  for (const auto& [p, b] : n.entries()) out[p.str()] = to_string(b);
  return out;
}

json to_json(const CcTraceRecord& r) { return record(r); }
json to_json(const SpTraceRecord& r) { return record(r); }

json to_json(const Counterexample& c) {
  json path = json::array();
  for (const auto& l : c.path) path.push_back(to_string(l));
  json out = {{"direction", to_string(c.direction)},
              {"explanation", c.explanation},
              {"path", path},
              {"depth", c.config.depth},
              {"choreography", print_choreography(c.config.cc.main)},
              {"choreographyState", to_json(c.config.cc_state)},
              {"network", to_json(c.config.sp.net)},
              {"networkState", to_json(c.config.sp_state)}};
  if (c.label) out["label"] = to_string(*c.label);
  return out;
}

json to_json(const Verdict& v) {
  json out = {{"status", to_string(v.status)},
              {"depth", v.depth},
              {"exhaustive", v.exhaustive},
              {"stats",
               {{"configsExplored", v.stats.configs_explored},
                {"ccTransitions", v.stats.cc_transitions},
                {"spTransitions", v.stats.sp_transitions},
                {"transitionsMatched", v.stats.transitions_matched},
                {"determinismChecks", v.stats.determinism_checks},
                {"spCallLabels", v.stats.sp_call_labels}}}};
  if (v.counterexample) out["counterexample"] = to_json(*v.counterexample);
  if (v.hypotheses) {
    json hs = json::array();
    for (const auto& h : v.hypotheses->failures) hs.push_back({{"hypothesis", to_string(h.kind)}, {"message", h.message}});
    out["hypotheses"] = hs;
  }
  return out;
}

json to_json(const WfViolation& v, const SourceUnit& unit) {
  return located({{"restriction", v.restriction}, {"rule", v.rule}, {"message", v.message}}, v.path, unit);
}

json to_json(const ProjectabilityIssue& i, const SourceUnit& unit) {
  json out = {{"conjunct", to_string(i.conjunct)}, {"message", i.message}};
  if (i.process) out["process"] = i.process->str();
  if (i.procedure) out["procedure"] = i.procedure->str();
  if (i.failure) {
    out = located(std::move(out), i.failure->path, unit);
    out["kind"] = i.failure->kind == ProjectionFailure::Kind::merge_conflict ? "merge-conflict" : "other";
    if (i.failure->conflict) {
      out["conflict"] = {to_string(i.failure->conflict->first), to_string(i.failure->conflict->second)};
    }
  }
  return out;
}

}  // namespace chorc
