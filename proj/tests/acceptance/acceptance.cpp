// Acceptance suite: one line per criterion, exit status 0 iff all pass.
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "testkit.hpp"

#include "chorc/correspondence.hpp"
#include "chorc/epp.hpp"
#include "chorc/fault.hpp"
#include "chorc/interp.hpp"
#include "chorc/merge.hpp"
#include "chorc/pruning.hpp"
#include "chorc/sp.hpp"

#ifndef CHORC_CLI
#error "CHORC_CLI must name the chorc executable"
#endif

using namespace chorc;
using namespace testkit;
using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

// Time limits, in seconds.
constexpr double kGoldenLimit = 1.0;
constexpr double kVerifyLimit = 30.0;
constexpr double kMutationLimit = 60.0;
constexpr double kAlgebraLimit = 120.0;
constexpr double kDeadlockLimit = 30.0;
constexpr double kRuntimeLimit = 30.0;

constexpr std::size_t kVerifyDepth = 10;
constexpr std::size_t kMinCorpus = 10;
constexpr std::size_t kSampleSize = 100000;
constexpr std::size_t kExhaustiveTripleLimit = 10000000;
constexpr int kRuntimeRuns = 100;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Cli {
  int code;
  std::string out;
};

Cli cli(const std::string& args) {
  std::string cmd = std::string(CHORC_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<json> json_lines(const std::string& out) {
  std::vector<json> lines;
  std::istringstream in(out);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) lines.push_back(json::parse(line));
  }
  return lines;
}

int failures = 0;

void report(int n, const std::string& name, double limit, const std::function<Outcome()>& body) {
  auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (limit > 0 && secs >= limit) {
    o.pass = false;
    o.detail += " (over the " + std::to_string(static_cast<int>(limit)) + "s limit)";
  }
  if (!o.pass) ++failures;
  std::printf("criterion %2d: %s  %-28s %7.2fs  %s\n", n, o.pass ? "PASS" : "FAIL", name.c_str(), secs,
              o.detail.c_str());
  std::fflush(stdout);
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ", ") + s;
  return out;
}

// --- 1 ---------------------------------------------------------------------

Outcome golden_projection() {
  Cli r = cli("project " + corpus_path("auth"));
  if (r.code != 0) return {false, "project exited " + std::to_string(r.code)};
  SpEntries got = parse_sp_file(r.out);
  SpEntries want{{"c", auth_bc()}, {"ip", auth_bip()}, {"s", auth_bs()}};
  if (got != want) return {false, "projection differs:\n" + r.out};
  return {true, "c, ip, s match exactly"};
}

// --- 2 ---------------------------------------------------------------------

Outcome golden_failure() {
  Cli r = cli("check --json " + corpus_path("auth_noselect"));
  if (r.code != 1) return {false, "check exited " + std::to_string(r.code)};
  json j = json::parse(r.out);
  std::map<std::string, std::pair<std::string, std::string>> conflicts;
  for (const auto& issue : j.at("projectability")) {
    if (issue.at("kind") != "merge-conflict") return {false, "unexpected issue kind " + issue.at("kind").dump()};
    conflicts[issue.at("process")] = {issue.at("conflict")[0], issue.at("conflict")[1]};
  }
  std::map<std::string, std::pair<std::string, std::string>> want{
      {"c", {"s?t; end", "end"}},
      {"s", {"c!token; end", "end"}},
  };
  if (conflicts != want) return {false, "reported " + j.at("projectability").dump()};
  return {true, "c: merge(s?t; end, end) undefined; s: merge(c!token; end, end) undefined"};
}

// --- 3 ---------------------------------------------------------------------

std::vector<std::string> cli_labels(const std::string& cmd, const std::string& state) {
  Cli r = cli(cmd + " --json --policy first --state " + state + " " + corpus_path("auth"));
  if (r.code != 0) throw std::runtime_error(cmd + " exited " + std::to_string(r.code));
  std::vector<std::string> labels;
  for (const auto& line : json_lines(r.out)) {
    if (line.contains("label")) labels.push_back(line["label"]);
  }
  return labels;
}

Outcome trace_agreement() {
  const std::vector<std::string> accept{"L_Com c ip 0", "L_Tau ip", "L_Sel ip s left", "L_Sel ip c left",
                                        "L_Com s c 7"};
  const std::vector<std::string> reject{"L_Com c ip 1", "L_Tau ip", "L_Sel ip s right", "L_Sel ip c right"};
  const std::pair<std::string, const std::vector<std::string>*> cases[] = {
      {"c.credentials=0,s.token=7", &accept}, {"c.credentials=1,s.token=7", &reject}};
  for (const auto& [state, want] : cases) {
    auto run = cli_labels("run", state);
    auto sim = cli_labels("simulate", state);
    if (run != sim) return {false, "run [" + join(run) + "] vs simulate [" + join(sim) + "]"};
    if (run != *want) return {false, "unexpected labels [" + join(run) + "]"};
  }
  return {true, "both guard outcomes: identical 5- and 4-label sequences"};
}

// --- 4, 8, 11 --------------------------------------------------------------

struct CorpusVerdict {
  std::string name;
  int code = -1;
  json checks;
};

std::vector<CorpusVerdict> verified;

Outcome epp_theorem() {
  std::vector<std::string> failed;
  std::size_t exhaustive = 0;
  std::size_t matched = 0;
  for (const auto& name : good_corpus()) {
    Cli r = cli("verify --json --depth " + std::to_string(kVerifyDepth) + " " + corpus_path(name));
    CorpusVerdict v{name, r.code, json::parse(r.out).at("checks")};
    if (r.code != 0 || v.checks.at("epp").at("status") != "verified") failed.push_back(name);
    if (v.checks.at("epp").at("exhaustive") == true) ++exhaustive;
    matched += v.checks.at("epp").at("stats").at("transitionsMatched").get<std::size_t>();
    verified.push_back(std::move(v));
  }
  const std::vector<std::string> required{"auth", "filetransfer", "pipeline", "nested"};
  for (const auto& name : required) {
    if (std::find(good_corpus().begin(), good_corpus().end(), name) == good_corpus().end()) {
      failed.push_back("missing " + name);
    }
  }
  if (good_corpus().size() < kMinCorpus) failed.push_back("corpus too small");
  if (!failed.empty()) return {false, "failed: " + join(failed)};
  return {true, std::to_string(verified.size()) + " programs, 0 counterexamples, " + std::to_string(exhaustive) +
                    " exhaustive, " + std::to_string(matched) + " transitions matched"};
}

Outcome determinism() {
  if (verified.empty()) return {false, "criterion 4 did not run"};
  std::size_t checks = 0;
  for (const auto& v : verified) {
    const json& e = v.checks.at("epp");
    if (e.at("status") != "verified") return {false, v.name + " not verified"};
    if (e.contains("counterexample")) return {false, v.name + ": " + e["counterexample"].dump()};
    checks += e.at("stats").at("determinismChecks").get<std::size_t>();
  }
  if (checks == 0) return {false, "no transitions were checked"};
  return {true, std::to_string(checks) + " rich-label replays, 0 violations"};
}

Outcome locality() {
  auto it = std::find_if(verified.begin(), verified.end(), [](const auto& v) { return v.name == "filetransfer"; });
  if (it == verified.end()) return {false, "criterion 4 did not run"};
  const json& e = it->checks.at("epp");
  std::size_t calls = e.at("stats").at("spCallLabels");
  if (e.at("status") != "verified") return {false, "verification failed"};
  if (calls == 0) return {false, "no call labels observed"};

  // Recount independently over the network's reachable configurations.
  CCProgram p = corpus("filetransfer");
  EppParams ps = infer_params(p);
  SPProgram sp = epp(ps.procedures, ps.processes, p);
  std::size_t seen = 0, bad = 0;
  for (const auto& s0 : probe_states(p)) {
    std::vector<std::pair<Network, State>> level{{sp.net, s0}};
    for (std::size_t d = 0; d < kVerifyDepth; ++d) {
      std::vector<std::pair<Network, State>> next;
      for (const auto& [n, s] : level) {
        for (auto& t : sp_enabled(sp.procs, n, s)) {
          if (const auto* c = std::get_if<SpLabel::Call>(&t.label.v)) {
            ++seen;
            if (!(c->name.pid == c->pid)) ++bad;
          }
          next.emplace_back(std::move(t.next), std::move(t.state));
        }
      }
      level = std::move(next);
    }
  }
  if (bad) return {false, std::to_string(bad) + " call labels name another process"};
  return {true, std::to_string(calls) + " call labels during verification, " + std::to_string(seen) +
                    " on replay, 0 violations"};
}

// --- 5 ---------------------------------------------------------------------

// The golden checks a defect could also trip.
bool goldens_hold() {
  CCProgram auth = corpus("auth");
  SPProgram sp = epp({}, infer_params(auth).processes, auth);
  if (!(sp.net.at(P("c")) == auth_bc() && sp.net.at(P("s")) == auth_bs() && sp.net.at(P("ip")) == auth_bip())) {
    return false;
  }
  SpRun run = sp_run(sp, state_of({{"s", "token", 7}}), SchedulerPolicy::first(), 100);
  CcRun ref = cc_run(auth, state_of({{"s", "token", 7}}), SchedulerPolicy::first(), 100);
  if (run.trace.size() != ref.trace.size()) return false;
  for (std::size_t i = 0; i < run.trace.size(); ++i) {
    if (!(run.trace[i].label == ref.trace[i].label)) return false;
  }
  return true;
}

Outcome mutations() {
  const std::pair<fault::Kind, const char*> kinds[] = {
      {fault::Kind::drop_selection_projection, "drop-selection"},
      {fault::Kind::exact_match_only, "no-pruning-in-match"},
      {fault::Kind::swap_selection_branch, "wrong-selection-branch"},
      {fault::Kind::no_delay_eta, "no-delayed-interaction"},
      {fault::Kind::rt_call_ignores_pending, "runtime-call-ignores-pending"},
  };
  if (!goldens_hold()) return {false, "goldens fail without any defect"};
  std::vector<std::string> found, missed;
  for (const auto& [kind, label] : kinds) {
    fault::Scope scope(kind);
    std::string by;
    if (!goldens_hold()) by = "golden";
    for (const auto& name : good_corpus()) {
      if (!by.empty()) break;
      if (!verify_epp(corpus(name), kVerifyDepth).ok()) by = name;
    }
    (by.empty() ? missed : found).push_back(std::string(label) + (by.empty() ? "" : " (" + by + ")"));
  }
  if (!missed.empty()) return {false, "undetected: " + join(missed)};
  return {true, std::to_string(found.size()) + "/5 detected: " + join(found)};
}

// --- 6, 7 ------------------------------------------------------------------

const std::vector<Behaviour>& space() {
  static const auto v = small_behaviours(3);
  return v;
}

Outcome merge_algebra() {
  const auto& bs = space();
  std::vector<XBehaviour> xs{XBehaviour::undefined()};
  for (const auto& b : bs) xs.push_back(inject(b));
  std::size_t bad = 0, pairs = 0;
  for (const auto& b : bs) {
    if (!(merge(b, b) == inject(b))) ++bad;
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i; j < xs.size(); ++j) {
      ++pairs;
      if (!(xmerge(xs[i], xs[j]) == xmerge(xs[j], xs[i]))) ++bad;
    }
  }
  const std::size_t n = xs.size();
  const bool exhaustive = n * n * n <= kExhaustiveTripleLimit;
  std::size_t triples = 0;
  auto assoc = [&](const XBehaviour& a, const XBehaviour& b, const XBehaviour& c) {
    ++triples;
    if (!(xmerge(xmerge(a, b), c) == xmerge(a, xmerge(b, c)))) ++bad;
  };
  if (exhaustive) {
    for (const auto& a : xs)
      for (const auto& b : xs)
        for (const auto& c : xs) assoc(a, b, c);
  } else {
    std::mt19937_64 gen(6);
    for (std::size_t k = 0; k < kSampleSize; ++k) assoc(pick(xs, gen), pick(xs, gen), pick(xs, gen));
  }
  if (bad) return {false, std::to_string(bad) + " violations"};
  return {true, std::to_string(bs.size()) + " terms, " + std::to_string(pairs) + " unordered pairs, " +
                    std::to_string(triples) + (exhaustive ? " triples (all)" : " sampled triples") +
                    ", 0 violations"};
}

Outcome pruning_characterisation() {
  const auto& bs = space();
  std::size_t bad = 0, related = 0, defined_pairs = 0;
  std::vector<std::pair<std::size_t, std::size_t>> defined;
  for (std::size_t i = 0; i < bs.size(); ++i) {
    for (std::size_t j = 0; j < bs.size(); ++j) {
      XBehaviour m = merge(bs[i], bs[j]);
      bool mb = more_branches(bs[i], bs[j]);
      if (mb != (m == inject(bs[i]))) ++bad;
      if (mb) ++related;
      if (!m.is_undefined()) defined.emplace_back(i, j);
    }
  }
  defined_pairs = defined.size();

  std::mt19937_64 gen(7);
  std::vector<std::vector<Behaviour>> below(bs.size());
  auto prunings_of = [&](std::size_t i) -> const std::vector<Behaviour>& {
    if (below[i].empty()) below[i] = prunings(bs[i]);
    return below[i];
  };
  std::unordered_map<Behaviour, std::size_t> index;
  for (std::size_t i = 0; i < bs.size(); ++i) index.emplace(bs[i], i);
  auto lower = [&](const Behaviour& b) -> const std::vector<Behaviour>& { return prunings_of(index.at(b)); };

  // Least upper bound: two prunings of b merge to something b still prunes.
  std::size_t lub = 0;
  for (std::size_t k = 0; k < kSampleSize; ++k) {
    std::size_t i = std::uniform_int_distribution<std::size_t>(0, bs.size() - 1)(gen);
    const Behaviour& b1 = pick(prunings_of(i), gen);
    const Behaviour& b2 = pick(prunings_of(i), gen);
    auto m = to_behaviour(merge(b1, b2));
    if (!m || !more_branches(bs[i], *m)) ++bad;
    ++lub;
  }
  // Downward mergeability: pruning both operands of a defined merge keeps
  // it defined and below the original result.
  std::size_t extend = 0;
  for (std::size_t k = 0; k < kSampleSize; ++k) {
    auto [i, j] = pick(defined, gen);
    auto top = to_behaviour(merge(bs[i], bs[j]));
    const Behaviour& p1 = pick(lower(bs[i]), gen);
    const Behaviour& p2 = pick(lower(bs[j]), gen);
    auto m = to_behaviour(merge(p1, p2));
    if (!top || !m || !more_branches(*top, *m)) ++bad;
    ++extend;
  }
  if (bad) return {false, std::to_string(bad) + " violations"};
  return {true, std::to_string(bs.size() * bs.size()) + " pairs (" + std::to_string(related) + " related, " +
                    std::to_string(defined_pairs) + " mergeable), " + std::to_string(lub) + " triples, " +
                    std::to_string(extend) + " quadruples, 0 violations"};
}

// --- 9 ---------------------------------------------------------------------

Outcome deadlock_and_confluence() {
  std::vector<std::string> failed;
  std::size_t configs = 0;
  for (const auto& name : good_corpus()) {
    CCProgram p = corpus(name);
    auto states = probe_states(p);
    Verdict d = check_deadlock_freedom(p, kVerifyDepth, states);
    Verdict c = check_confluence(p, kVerifyDepth, states);
    EppParams ps = infer_params(p);
    Verdict n = check_confluence(epp(ps.procedures, ps.processes, p), kVerifyDepth, states);
    if (!d.ok()) failed.push_back(name + " deadlock");
    if (!c.ok()) failed.push_back(name + " choreography confluence");
    if (!n.ok()) failed.push_back(name + " network confluence");
    configs += d.stats.configs_explored;
  }
  if (!failed.empty()) return {false, join(failed)};
  return {true, std::to_string(good_corpus().size()) + " programs, " + std::to_string(configs) +
                    " configurations, 0 deadlocks, 0 unjoinable pairs"};
}

// --- 10 --------------------------------------------------------------------

Outcome runtime_agreement() {
  struct Case {
    const char* name;
    std::function<std::string(int)> state;
  };
  const Case cases[] = {
      {"auth", [](int k) { return "c.credentials=" + std::to_string(k % 2) + ",s.token=" + std::to_string(k); }},
      {"pipeline", [](int k) { return "a.x=" + std::to_string(k - 50); }},
  };
  int ok = 0, total = 0;
  std::vector<std::string> problems;
  for (const auto& c : cases) {
    for (int k = 0; k < kRuntimeRuns; ++k) {
      ++total;
      std::string args = " --json --state " + c.state(k) + " " + corpus_path(c.name);
      Cli e = cli("exec --seed " + std::to_string(k) + args);
      Cli r = cli("run" + args);
      auto el = json_lines(e.out);
      auto rl = json_lines(r.out);
      if (e.code != 0 || r.code != 0 || el.empty() || rl.empty()) {
        problems.push_back(std::string(c.name) + " seed " + std::to_string(k) + ": exit " + std::to_string(e.code));
        continue;
      }
      const json& end = el.back();
      if (end["outcome"] != "terminated" || end["traceValid"] != true || end["finalState"] != rl.back()["finalState"]) {
        problems.push_back(std::string(c.name) + " seed " + std::to_string(k) + ": " + end.dump());
        continue;
      }
      ++ok;
    }
  }
  std::string detail = std::to_string(ok) + "/" + std::to_string(total) + " runs terminated, replayed and agreed";
  if (!problems.empty()) return {false, detail + "; first problem: " + problems.front()};
  return {true, detail};
}

}  // namespace

int main() {
  report(1, "golden projection", kGoldenLimit, golden_projection);
  report(2, "golden failure", kGoldenLimit, golden_failure);
  report(3, "trace agreement", kGoldenLimit, trace_agreement);
  report(4, "projection correspondence", kVerifyLimit, epp_theorem);
  report(5, "mutation sensitivity", kMutationLimit, mutations);
  report(6, "merge algebra", kAlgebraLimit, merge_algebra);
  report(7, "pruning characterisation", kAlgebraLimit, pruning_characterisation);
  report(8, "determinism and stability", 0, determinism);
  report(9, "deadlock and confluence", kDeadlockLimit, deadlock_and_confluence);
  report(10, "runtime agreement", kRuntimeLimit, runtime_agreement);
  report(11, "call-name locality", 0, locality);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
