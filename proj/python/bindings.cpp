#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>

#include "chorc/correspondence.hpp"
#include "chorc/epp.hpp"
#include "chorc/interp.hpp"
#include "chorc/merge.hpp"
#include "chorc/pruning.hpp"
#include "chorc/report.hpp"
#include "chorc/runtime.hpp"
#include "chorc/syntax.hpp"

namespace py = pybind11;
using nlohmann::json;
using namespace chorc;

namespace {

using StateDict = std::map<std::string, Value>;

py::object to_py(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

State make_state(const StateDict& cells) {
  State s;
  for (const auto& [key, v] : cells) {
    auto dot = key.find('.');
    if (dot == std::string::npos) throw py::value_error("state keys look like pid.var, got '" + key + "'");
    s.set(Pid(key.substr(0, dot)), Var(key.substr(dot + 1)), v);
  }
  return s;
}

SchedulerPolicy make_policy(const std::string& policy, std::uint64_t seed) {
  if (policy == "first") return SchedulerPolicy::first();
  if (policy == "random") return SchedulerPolicy::random(seed);
  throw py::value_error("policy must be 'first' or 'random'");
}

SPProgram compile(const CCProgram& p) {
  EppParams ps = infer_params(p);
  return epp(ps.procedures, ps.processes, p);
}

template <class Record>
json trace_json(const std::vector<Record>& trace) {
  json out = json::array();
  for (const auto& r : trace) out.push_back(to_json(r));
  return out;
}

py::object check(const std::string& text) {
  SourceUnit unit = parse_program(text);
  WfReport wf = cc_check_wf(unit.program);
  EppParams ps = infer_params(unit.program);
  json j = {{"processes", json::array()}, {"procedures", json::array()}};
  for (const auto& p : ps.processes) j["processes"].push_back(p.str());
  for (const auto& x : ps.procedures) j["procedures"].push_back(x.str());
  j["wellFormedness"] = json::array();
  for (const auto& v : wf.violations) j["wellFormedness"].push_back(to_json(v, unit));
  j["projectability"] = json::array();
  if (wf.ok()) {
    for (const auto& i : projectable(ps.procedures, ps.processes, unit.program).issues) {
      j["projectability"].push_back(to_json(i, unit));
    }
  }
  j["ok"] = j["wellFormedness"].empty() && j["projectability"].empty();
  return to_py(j);
}

std::map<std::string, std::string> project(const std::string& text) {
  SPProgram sp = compile(parse_program(text).program);
  std::map<std::string, std::string> out;
  for (const auto& [p, b] : sp.net.entries()) out[p.str()] = to_string(b);
  for (const auto& [ref, b] : sp.procs.entries()) out[to_string(ref)] = to_string(b);
  return out;
}

py::object run(const std::string& text, const StateDict& state, const std::string& policy, std::uint64_t seed,
               std::size_t fuel) {
  CcRun r = cc_run(parse_program(text).program, make_state(state), make_policy(policy, seed), fuel);
  return to_py({{"trace", trace_json(r.trace)}, {"outcome", to_string(r.outcome)}, {"finalState", to_json(r.state)}});
}

py::object simulate(const std::string& text, const StateDict& state, const std::string& policy, std::uint64_t seed,
                    std::size_t fuel) {
  SpRun r = sp_run(compile(parse_program(text).program), make_state(state), make_policy(policy, seed), fuel);
  return to_py({{"trace", trace_json(r.trace)},
                {"outcome", to_string(r.outcome)},
                {"finalState", to_json(r.state)},
                {"finalNetwork", to_json(r.program.net)}});
}

py::object execute_program(const std::string& text, const StateDict& state, std::uint64_t seed,
                           std::size_t max_steps, std::size_t timeout_ms) {
  SPProgram sp = compile(parse_program(text).program);
  State s0 = make_state(state);
  ExecutionReport r;
  {
    py::gil_scoped_release release;
    r = execute(sp, s0, RuntimeConfig{seed, std::chrono::milliseconds(timeout_ms), max_steps});
  }
  TraceValidation v = validate_trace(sp, s0, r);
  return to_py({{"trace", trace_json(r.trace)},
                {"outcome", to_string(r.outcome)},
                {"finalState", to_json(r.final_state)},
                {"finalNetwork", to_json(r.final_net)},
                {"traceValid", v.ok}});
}

py::object verify(const std::string& text, std::size_t depth) {
  CCProgram p = parse_program(text).program;
  Verdict v;
  {
    py::gil_scoped_release release;
    v = verify_epp(p, depth);
  }
  return to_py(to_json(v));
}

std::string merge_text(const std::string& a, const std::string& b) {
  return to_string(xmerge(parse_xbehaviour(a), parse_xbehaviour(b)));
}

bool more_branches_text(const std::string& a, const std::string& b) {
  return more_branches(parse_behaviour(a), parse_behaviour(b));
}

}  // namespace

PYBIND11_MODULE(_chorc, m) {
  m.doc() = "Choreography compiler core";

  static py::exception<SyntaxError> syntax_error(m, "ChorSyntaxError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const SyntaxError& e) {
      PyErr_SetString(syntax_error.ptr(), e.what());
    } catch (const NotProjectable& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("check", &check, py::arg("text"), "Well-formedness and projectability diagnostics.");
  m.def("project", &project, py::arg("text"),
        "Behaviour text per process, plus `X@p` entries for procedures.");
  m.def("run", &run, py::arg("text"), py::arg("state") = StateDict{}, py::arg("policy") = "first",
        py::arg("seed") = 0, py::arg("fuel") = 1000);
  m.def("simulate", &simulate, py::arg("text"), py::arg("state") = StateDict{}, py::arg("policy") = "first",
        py::arg("seed") = 0, py::arg("fuel") = 1000);
  m.def("execute", &execute_program, py::arg("text"), py::arg("state") = StateDict{}, py::arg("seed") = 0,
        py::arg("max_steps") = 10000, py::arg("timeout_ms") = 1000);
  m.def("verify", &verify, py::arg("text"), py::arg("depth") = 10);
  m.def("merge", &merge_text, py::arg("a"), py::arg("b"), "Merge of two behaviours; `undefined` on conflict.");
  m.def("more_branches", &more_branches_text, py::arg("b"), py::arg("pruned"));
}
