#include "chorc/interp.hpp"

namespace chorc {

std::string_view to_string(RunOutcome o) {
  switch (o) {
    case RunOutcome::terminated: return "terminated";
    case RunOutcome::stuck: return "stuck";
    case RunOutcome::out_of_fuel: return "out-of-fuel";
  }
  return "?";
}

std::size_t Chooser::pick(std::size_t n) {
  if (policy_.kind == SchedulerPolicy::Kind::first || n <= 1) return 0;
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
}

CcRun cc_run(const CCProgram& p, const State& s, SchedulerPolicy policy, std::size_t fuel) {
  CcRun run{{}, p, s, RunOutcome::terminated};
  Chooser chooser(policy);
  while (true) {
    auto enabled = cc_enabled(run.program.procs, run.program.main, run.state);
    if (enabled.empty()) {
      run.outcome = run.program.main.is_end() ? RunOutcome::terminated : RunOutcome::stuck;
      return run;
    }
    if (run.trace.size() >= fuel) {
      run.outcome = RunOutcome::out_of_fuel;
      return run;
    }
    auto& t = enabled[chooser.pick(enabled.size())];
    std::uint64_t pre = run.state.digest();
    run.program.main = t.next;
    run.state = std::move(t.state);
    run.trace.push_back({run.trace.size() + 1, t.label, forget(t.label), pre, run.state.digest()});
  }
}

SpRun sp_run(const SPProgram& p, const State& s, SchedulerPolicy policy, std::size_t fuel) {
  SpRun run{{}, p, s, RunOutcome::terminated};
  Chooser chooser(policy);
  while (true) {
    auto enabled = sp_enabled(run.program.procs, run.program.net, run.state);
    if (enabled.empty()) {
      run.outcome = run.program.net.all_end() ? RunOutcome::terminated : RunOutcome::stuck;
      return run;
    }
    if (run.trace.size() >= fuel) {
      run.outcome = RunOutcome::out_of_fuel;
      return run;
    }
    auto& t = enabled[chooser.pick(enabled.size())];
    std::uint64_t pre = run.state.digest();
    run.program.net = std::move(t.next);
    run.state = std::move(t.state);
    run.trace.push_back({run.trace.size() + 1, t.label, forget(t.label), pre, run.state.digest()});
  }
}

}  // namespace chorc
