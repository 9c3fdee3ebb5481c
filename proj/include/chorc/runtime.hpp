#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chorc/interp.hpp"
#include "chorc/sp.hpp"
#include "chorc/state.hpp"

namespace chorc {

struct RuntimeConfig {
  std::uint64_t seed = 0;
  /// How long the sequencer waits for the processes to settle before
  /// declaring the system deadlocked.
  std::chrono::milliseconds step_timeout{1000};
  std::size_t max_steps = 10000;
};

enum class ExecOutcome { terminated, deadlocked, step_limit };

std::string_view to_string(ExecOutcome o);

struct ExecutionReport {
  std::vector<SpTraceRecord> trace;
  State final_state;
  Network final_net;
  ExecOutcome outcome = ExecOutcome::terminated;
};

/// Runs every process of the network on its own thread. Sends and
/// selections rendezvous with the matching receive or branching; a central
/// sequencer waits until every live process is blocked on an action, picks
/// one enabled commit with a generator seeded from `cfg.seed`, and commits
/// it atomically, so equal inputs give equal reports.
ExecutionReport execute(const SPProgram& p, const State& s0, const RuntimeConfig& cfg);

struct TraceValidation {
  bool ok = true;
  /// Index into the trace of the first record that does not replay; equal
  /// to the trace length when only the final configuration disagrees.
  std::optional<std::size_t> divergence;
  std::string message;
};

/// Replays the trace through the sequential semantics.
TraceValidation validate_trace(const SPProgram& p, const State& s0, const ExecutionReport& report);

}  // namespace chorc
