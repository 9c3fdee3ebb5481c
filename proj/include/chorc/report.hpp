#pragma once

#include <json.hpp>

#include "chorc/correspondence.hpp"
#include "chorc/epp.hpp"
#include "chorc/interp.hpp"
#include "chorc/runtime.hpp"
#include "chorc/syntax.hpp"

namespace chorc {

/// Machine-readable forms used by `--json` output and the Python module.
/// Every top-level document carries `"format": 1`.

nlohmann::json to_json(const State& s);
nlohmann::json to_json(const Network& n);
nlohmann::json to_json(const CcTraceRecord& r);
nlohmann::json to_json(const SpTraceRecord& r);
nlohmann::json to_json(const Counterexample& c);
nlohmann::json to_json(const Verdict& v);
nlohmann::json to_json(const WfViolation& v, const SourceUnit& unit);
nlohmann::json to_json(const ProjectabilityIssue& i, const SourceUnit& unit);

}  // namespace chorc
