#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "chorc/cc.hpp"
#include "chorc/labels.hpp"
#include "chorc/sp.hpp"
#include "chorc/state.hpp"

namespace chorc {

/// Which enabled transition a sequential run takes: always the first in
/// canonical order, or a uniformly random one from a seeded generator.
struct SchedulerPolicy {
  enum class Kind { first, random };

  Kind kind = Kind::first;
  std::uint64_t seed = 0;

  static SchedulerPolicy first() { return {Kind::first, 0}; }
  static SchedulerPolicy random(std::uint64_t seed) { return {Kind::random, seed}; }
};

template <class ProcName>
struct TraceRecord {
  std::size_t step = 0;  // 1-based
  RichLabel<ProcName> rich;
  TLabel label;
  std::uint64_t pre_digest = 0;
  std::uint64_t post_digest = 0;
};

using CcTraceRecord = TraceRecord<RecVar>;
using SpTraceRecord = TraceRecord<ProcRef>;

/// terminated: nothing left to do (main is end, or every process is end).
/// stuck: no transition enabled although work remains.
/// out_of_fuel: the step budget ran out first.
enum class RunOutcome { terminated, stuck, out_of_fuel };

std::string_view to_string(RunOutcome o);

struct CcRun {
  std::vector<CcTraceRecord> trace;
  CCProgram program;
  State state;
  RunOutcome outcome = RunOutcome::terminated;
};

struct SpRun {
  std::vector<SpTraceRecord> trace;
  SPProgram program;
  State state;
  RunOutcome outcome = RunOutcome::terminated;
};

CcRun cc_run(const CCProgram& p, const State& s, SchedulerPolicy policy, std::size_t fuel);
SpRun sp_run(const SPProgram& p, const State& s, SchedulerPolicy policy, std::size_t fuel);

/// Index picker shared by the interpreters and the runtime.
class Chooser {
 public:
  explicit Chooser(SchedulerPolicy policy) : policy_(policy), rng_(policy.seed) {}
  std::size_t pick(std::size_t n);

 private:
  SchedulerPolicy policy_;
  std::mt19937_64 rng_;
};

}  // namespace chorc
