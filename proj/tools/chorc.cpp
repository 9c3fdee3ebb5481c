// Command-line driver: check, project, run, simulate, exec and verify
// choreography programs.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "chorc/correspondence.hpp"
#include "chorc/epp.hpp"
#include "chorc/interp.hpp"
#include "chorc/report.hpp"
#include "chorc/runtime.hpp"
#include "chorc/syntax.hpp"

namespace {

using nlohmann::json;
using namespace chorc;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Options {
  std::string file;
  bool json = false;
  std::vector<std::string> states;
  std::uint64_t seed = 0;
  std::size_t fuel = 1000;
  std::string policy = "first";
  std::string out_dir;
  std::size_t depth = 10;
  std::size_t timeout_ms = 1000;
};

// Thrown after the diagnostic has been printed.
struct Exit {
  int code;
};

void emit(const json& j) { std::cout << j.dump() << "\n"; }

[[noreturn]] void usage_error(const Options& o, const std::string& command, const std::string& message) {
  if (o.json) {
    emit({{"format", 1}, {"command", command}, {"ok", false}, {"error", message}});
  } else {
    std::cerr << "chorc " << command << ": " << message << "\n";
  }
  throw Exit{kUsage};
}

SourceUnit load(const Options& o, const std::string& command) {
  std::ifstream in(o.file, std::ios::binary);
  if (!in) usage_error(o, command, "cannot read " + o.file);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_program(buf.str(), o.file);
  } catch (const SyntaxError& e) {
    if (o.json) {
      emit({{"format", 1},
            {"command", command},
            {"ok", false},
            {"syntaxError", {{"line", e.pos().line}, {"col", e.pos().col}, {"message", e.message()}}}});
    } else {
      std::cerr << o.file << ":" << e.pos().line << ":" << e.pos().col << ": syntax error: " << e.message() << "\n";
    }
    throw Exit{kUsage};
  }
}

State initial_state(const Options& o, const std::string& command) {
  State s;
  for (const auto& item : o.states) {
    auto dot = item.find('.');
    auto eq = item.find('=');
    if (dot == std::string::npos || eq == std::string::npos || dot > eq) {
      usage_error(o, command, "state assignments look like pid.var=value, got '" + item + "'");
    }
    try {
      std::size_t used = 0;
      std::string text = item.substr(eq + 1);
      Value v = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      s.set(Pid(item.substr(0, dot)), Var(item.substr(dot + 1, eq - dot - 1)), v);
    } catch (const std::exception&) {
      usage_error(o, command, "bad state assignment '" + item + "'");
    }
  }
  return s;
}

std::string location(const SourceUnit& unit, const AstPath& path) {
  auto it = unit.spans.find(path);
  if (it == unit.spans.end()) return unit.path;
  return unit.path + ":" + std::to_string(it->second.begin.line) + ":" + std::to_string(it->second.begin.col);
}

std::string join(const auto& xs) {
  std::string out;
  for (const auto& x : xs) {
    if (!out.empty()) out += ", ";
    out += x.str();
  }
  return out.empty() ? "none" : out;
}

struct Analysis {
  WfReport wf;
  EppParams params;
  ProjectabilityReport projection;
  bool ok() const { return wf.ok() && projection.ok(); }
};

Analysis analyse(const SourceUnit& unit) {
  Analysis a{cc_check_wf(unit.program), infer_params(unit.program), {}};
  a.projection = projectable(a.params.procedures, a.params.processes, unit.program);
  return a;
}

json analysis_json(const Analysis& a, const SourceUnit& unit) {
  json wf = json::array();
  for (const auto& v : a.wf.violations) wf.push_back(to_json(v, unit));
  json proj = json::array();
  for (const auto& i : a.projection.issues) proj.push_back(to_json(i, unit));
  json ps = json::array(), xs = json::array();
  for (const auto& p : a.params.processes) ps.push_back(p.str());
  for (const auto& x : a.params.procedures) xs.push_back(x.str());
  return {{"ok", a.ok()}, {"processes", ps}, {"procedures", xs}, {"wellFormedness", wf}, {"projectability", proj}};
}

void print_analysis(const Analysis& a, const SourceUnit& unit) {
  for (const auto& v : a.wf.violations) {
    std::cerr << location(unit, v.path) << ": error: " << v.message << " [restriction " << v.restriction << ", "
              << v.rule << "]\n";
  }
  for (const auto& i : a.projection.issues) {
    std::string where = i.failure ? location(unit, i.failure->path) : unit.path;
    std::cerr << where << ": error: " << i.message << " [" << to_string(i.conjunct) << "]\n";
    if (i.failure && i.failure->conflict) {
      std::cerr << "  cannot merge `" << to_string(i.failure->conflict->first) << "` with `"
                << to_string(i.failure->conflict->second) << "`\n";
    }
  }
}

int cmd_check(const Options& o) {
  SourceUnit unit = load(o, "check");
  Analysis a = analyse(unit);
  if (o.json) {
    json j = analysis_json(a, unit);
    j["format"] = 1;
    j["command"] = "check";
    emit(j);
  } else if (a.ok()) {
    std::cout << unit.path << ": ok (processes: " << join(a.params.processes)
              << "; procedures: " << join(a.params.procedures) << ")\n";
  } else {
    print_analysis(a, unit);
  }
  return a.ok() ? kOk : kFailed;
}

// Parses, checks and compiles; prints the analysis and exits on failure.
std::pair<SourceUnit, SPProgram> compile(const Options& o, const std::string& command, EppParams* params = nullptr) {
  SourceUnit unit = load(o, command);
  Analysis a = analyse(unit);
  if (!a.ok()) {
    if (o.json) {
      json j = analysis_json(a, unit);
      j["format"] = 1;
      j["command"] = command;
      emit(j);
    } else {
      print_analysis(a, unit);
    }
    throw Exit{kFailed};
  }
  if (params) *params = a.params;
  SPProgram sp = epp(a.params.procedures, a.params.processes, unit.program);
  return {std::move(unit), std::move(sp)};
}

int cmd_project(const Options& o) {
  EppParams params;
  auto [unit, sp] = compile(o, "project", &params);
  std::vector<std::pair<std::string, SpEntries>> files;
  for (const auto& p : params.processes) files.push_back({p.str() + ".sp", {{p.str(), sp.net.at(p)}}});
  SpEntries procs;
  for (const auto& [ref, b] : sp.procs.entries()) procs.emplace_back(to_string(ref), b);
  files.push_back({"procedures.sp", procs});
  if (std::count_if(files.begin(), files.end(), [](const auto& f) { return f.first == "procedures.sp"; }) > 1) {
    usage_error(o, "project", "a process named 'procedures' clashes with the procedures file");
  }

  if (!o.out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(o.out_dir, ec);
    if (ec) usage_error(o, "project", "cannot create " + o.out_dir + ": " + ec.message());
    for (const auto& [name, entries] : files) {
      std::ofstream out(std::filesystem::path(o.out_dir) / name, std::ios::binary);
      out << print_sp_file(entries);
      if (!out) usage_error(o, "project", "cannot write " + name);
    }
  }
  if (o.json) {
    json net = json::object(), defs = json::object(), names = json::array();
    for (const auto& p : params.processes) net[p.str()] = to_string(sp.net.at(p));
    for (const auto& [name, b] : procs) defs[name] = to_string(b);
    for (const auto& f : files) names.push_back(f.first);
    emit({{"format", 1}, {"command", "project"}, {"ok", true}, {"processes", net}, {"procedures", defs},
          {"files", names}});
  } else if (o.out_dir.empty()) {
    SpEntries all;
    for (const auto& f : files) all.insert(all.end(), f.second.begin(), f.second.end());
    std::cout << print_sp_file(all);
  } else {
    for (const auto& f : files) std::cout << (std::filesystem::path(o.out_dir) / f.first).string() << "\n";
  }
  return kOk;
}

SchedulerPolicy policy(const Options& o) {
  return o.policy == "random" ? SchedulerPolicy::random(o.seed) : SchedulerPolicy::first();
}

template <class Record>
void print_trace(const Options& o, const std::vector<Record>& trace) {
  for (const auto& r : trace) {
    if (o.json) {
      emit(to_json(r));
    } else {
      std::cout << r.step << "  " << to_string(r.rich) << "  [" << to_string(r.label) << "]  "
                << digest_hex(r.post_digest) << "\n";
    }
  }
}

void print_end(const Options& o, std::string_view outcome, const State& s, const json& extra = json::object()) {
  if (o.json) {
    json j = {{"outcome", outcome}, {"finalState", to_json(s)}, {"stateDigest", digest_hex(s.digest())}};
    j.update(extra);
    emit(j);
  } else {
    std::cout << "outcome: " << outcome << "\nfinal state: " << to_string(s) << "\n";
  }
}

json header(const Options& o, const std::string& command) {
  return {{"format", 1}, {"command", command}, {"policy", o.policy}, {"seed", o.seed}, {"fuel", o.fuel}};
}

int cmd_run(const Options& o) {
  SourceUnit unit = load(o, "run");
  State s0 = initial_state(o, "run");
  if (auto wf = cc_check_wf(unit.program); !wf.ok()) {
    Analysis a{wf, infer_params(unit.program), {}};
    if (o.json) {
      json j = analysis_json(a, unit);
      j["format"] = 1;
      j["command"] = "run";
      emit(j);
    } else {
      print_analysis(a, unit);
    }
    return kFailed;
  }
  if (o.json) emit(header(o, "run"));
  CcRun r = cc_run(unit.program, s0, policy(o), o.fuel);
  print_trace(o, r.trace);
  print_end(o, to_string(r.outcome), r.state);
  return r.outcome == RunOutcome::stuck ? kFailed : kOk;
}

int cmd_simulate(const Options& o) {
  auto [unit, sp] = compile(o, "simulate");
  State s0 = initial_state(o, "simulate");
  if (o.json) emit(header(o, "simulate"));
  SpRun r = sp_run(sp, s0, policy(o), o.fuel);
  print_trace(o, r.trace);
  print_end(o, to_string(r.outcome), r.state, {{"finalNetwork", to_json(r.program.net)}});
  return r.outcome == RunOutcome::stuck ? kFailed : kOk;
}

int cmd_exec(const Options& o) {
  auto [unit, sp] = compile(o, "exec");
  State s0 = initial_state(o, "exec");
  RuntimeConfig cfg{o.seed, std::chrono::milliseconds(o.timeout_ms), std::max<std::size_t>(o.fuel, 1)};
  if (o.json) {
    json h = header(o, "exec");
    h["policy"] = "random";
    h["timeoutMs"] = o.timeout_ms;
    emit(h);
  }
  ExecutionReport report = execute(sp, s0, cfg);
  TraceValidation check = validate_trace(sp, s0, report);
  print_trace(o, report.trace);
  json extra = {{"finalNetwork", to_json(report.final_net)}, {"traceValid", check.ok}};
  if (!check.ok) extra["divergence"] = {{"index", *check.divergence}, {"message", check.message}};
  print_end(o, to_string(report.outcome), report.final_state, extra);
  if (!check.ok && !o.json) std::cerr << "trace does not replay at record " << *check.divergence << ": " << check.message << "\n";
  return check.ok && report.outcome != ExecOutcome::deadlocked ? kOk : kFailed;
}

void print_verdict(const std::string& name, const Verdict& v) {
  std::cout << name << ": " << to_string(v.status);
  if (v.ok()) {
    std::cout << " to depth " << v.depth << (v.exhaustive ? " (exhaustive)" : "") << ", "
              << v.stats.configs_explored << " configurations explored";
    if (v.stats.transitions_matched) std::cout << ", " << v.stats.transitions_matched << " transitions matched";
  }
  std::cout << "\n";
  if (v.hypotheses) {
    for (const auto& h : v.hypotheses->failures) std::cout << "  " << to_string(h.kind) << ": " << h.message << "\n";
  }
  if (const auto& c = v.counterexample) {
    std::cout << "  " << to_string(c->direction) << ": " << c->explanation << "\n  after:";
    for (const auto& l : c->path) std::cout << " [" << to_string(l) << "]";
    if (c->path.empty()) std::cout << " (initial configuration)";
    std::cout << "\n  state: " << to_string(c->config.cc_state) << "\n  choreography:\n";
    std::istringstream lines(print_choreography(c->config.cc.main));
    for (std::string line; std::getline(lines, line);) std::cout << "    " << line << "\n";
    if (!c->config.sp.net.all_end()) {
      std::cout << "  network:\n";
      for (const auto& [p, b] : c->config.sp.net.entries()) std::cout << "    " << p << ": " << to_string(b) << "\n";
    }
  }
}

int cmd_verify(const Options& o) {
  SourceUnit unit = load(o, "verify");
  std::vector<State> initial = o.states.empty() ? probe_states(unit.program)
                                                : std::vector<State>{initial_state(o, "verify")};
  const CCProgram& p = unit.program;
  std::vector<std::pair<std::string, Verdict>> verdicts;
  verdicts.emplace_back("epp", verify_epp(p, o.depth, initial));
  if (cc_check_wf(p).ok()) {
    verdicts.emplace_back("deadlock-freedom", check_deadlock_freedom(p, o.depth, initial));
    verdicts.emplace_back("confluence-choreography", check_confluence(p, o.depth, initial));
    EppParams params = infer_params(p);
    if (projectable(params.procedures, params.processes, p).ok()) {
      verdicts.emplace_back("confluence-network",
                            check_confluence(epp(params.procedures, params.processes, p), o.depth, initial));
    }
  }
  bool ok = std::all_of(verdicts.begin(), verdicts.end(), [](const auto& v) { return v.second.ok(); });
  if (o.json) {
    json checks = json::object();
    for (const auto& [name, v] : verdicts) checks[name] = to_json(v);
    json states = json::array();
    for (const auto& s : initial) states.push_back(to_json(s));
    emit({{"format", 1}, {"command", "verify"}, {"ok", ok}, {"depth", o.depth}, {"initialStates", states},
          {"checks", checks}});
  } else {
    for (const auto& [name, v] : verdicts) print_verdict(name, v);
  }
  return ok ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Choreography compiler: projection, interpreters, runtime and correspondence checking"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("file", o.file, "Choreography program (.chor)")->required();
    sub->add_flag("--json", o.json, "Machine-readable output");
  };
  auto execution = [&](CLI::App* sub) {
    sub->add_option("--state", o.states, "Initial value pid.var=v (repeatable)")->allow_extra_args(false)->delimiter(',');
    sub->add_option("--seed", o.seed, "Scheduler seed");
    sub->add_option("--fuel", o.fuel, "Maximum number of steps")->check(CLI::PositiveNumber);
  };

  auto* check = app.add_subcommand("check", "Check well-formedness and projectability");
  common(check);
  auto* project = app.add_subcommand("project", "Write one behaviour file per process and a procedures file");
  common(project);
  project->add_option("-o,--output", o.out_dir, "Output directory");
  auto* run = app.add_subcommand("run", "Run the choreography");
  common(run);
  execution(run);
  run->add_option("--policy", o.policy, "Scheduling policy")->check(CLI::IsMember({"first", "random"}));
  auto* simulate = app.add_subcommand("simulate", "Project, then run the process network sequentially");
  common(simulate);
  execution(simulate);
  simulate->add_option("--policy", o.policy, "Scheduling policy")->check(CLI::IsMember({"first", "random"}));
  auto* exec = app.add_subcommand("exec", "Project, then execute the network with one thread per process");
  common(exec);
  execution(exec);
  exec->add_option("--timeout", o.timeout_ms, "Milliseconds to wait for progress before reporting deadlock");
  auto* verify = app.add_subcommand("verify", "Check projection correspondence, deadlock-freedom and confluence");
  common(verify);
  verify->add_option("--depth", o.depth, "Exploration depth")->check(CLI::PositiveNumber);
  verify->add_option("--state", o.states, "Initial value pid.var=v (repeatable)")->allow_extra_args(false)->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*check) return cmd_check(o);
    if (*project) return cmd_project(o);
    if (*run) return cmd_run(o);
    if (*simulate) return cmd_simulate(o);
    if (*exec) return cmd_exec(o);
    if (*verify) return cmd_verify(o);
  } catch (const Exit& e) {
    return e.code;
  }
  return kUsage;
}
