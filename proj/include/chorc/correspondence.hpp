#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "chorc/cc.hpp"
#include "chorc/epp.hpp"
#include "chorc/labels.hpp"
#include "chorc/sp.hpp"
#include "chorc/state.hpp"

namespace chorc {

/// A choreography configuration next to a process configuration that is
/// supposed to implement it.
struct PairedConfig {
  CCProgram cc;
  State cc_state;
  SPProgram sp;
  State sp_state;
  std::size_t depth = 0;
};

struct Hypothesis {
  enum class Kind { program_wf, well_ann, projectable, str_projectable, main_coverage, vars_coverage };

  Kind kind;
  std::string message;
};

std::string_view to_string(Hypothesis::Kind k);

struct HypothesisReport {
  std::vector<Hypothesis> failures;
  bool ok() const { return failures.empty(); }
};

/// Preconditions of the correspondence theorem: well-formed program with
/// `xs` closed under calls, procedures only use declared processes, the
/// program is projectable, main is strongly projectable on every process in
/// `ps`, and `ps` covers main (calls contributing their declared processes)
/// and every declaration in `xs`.
HypothesisReport check_hypotheses(const CCProgram& p, const std::vector<RecVar>& xs, const std::vector<Pid>& ps);

struct Counterexample {
  enum class Direction {
    completeness,     // a choreography step without a matching network step
    soundness,        // a network step without a matching choreography step
    locality,         // a network call label naming another process
    determinism,      // one rich label, two different outcomes
    procs_stability,  // a network step changed procedure definitions
    head_shape,       // a projection did not have the shape the step demands
    preservation,     // a step lost (strong) projectability
    invariant,        // an enqueued pair broke state equality or pruning
    deadlock,         // a choreography that is not end but cannot move
    confluence,       // two transitions that never meet again within the bound
  };

  Direction direction;
  PairedConfig config;
  std::optional<TLabel> label;
  std::string explanation;
  /// Labels leading from the initial pair to `config`.
  std::vector<TLabel> path;
};

std::string_view to_string(Counterexample::Direction d);

struct VerifyStats {
  std::size_t configs_explored = 0;
  std::size_t cc_transitions = 0;
  std::size_t sp_transitions = 0;
  std::size_t transitions_matched = 0;
  std::size_t determinism_checks = 0;
  std::size_t sp_call_labels = 0;

  VerifyStats& operator+=(const VerifyStats& o);
};

struct Verdict {
  enum class Status { verified, counterexample, hypotheses_violated };

  Status status = Status::verified;
  std::size_t depth = 0;
  /// Every reachable configuration was explored within the bound.
  bool exhaustive = false;
  std::optional<Counterexample> counterexample;
  std::optional<HypothesisReport> hypotheses;
  VerifyStats stats;

  bool ok() const { return status == Status::verified; }
};

std::string_view to_string(Verdict::Status s);

/// Result of checking one paired configuration in one direction: the
/// successor pairs, or the first failure.
struct StepCheck {
  std::vector<std::pair<TLabel, PairedConfig>> successors;
  std::optional<Counterexample> failure;
  std::size_t matched = 0;
};

/// Every choreography transition must be matched by a network transition
/// with the same observable label and state whose network prunes the
/// projection of the choreography's successor.
StepCheck check_completeness_step(const EppParams& params, const PairedConfig& pc);

/// Every network transition must be matched by a choreography transition
/// with the same observable label and state whose projection is pruned by
/// the network's successor. Also checks call-label locality.
StepCheck check_soundness_step(const EppParams& params, const PairedConfig& pc);

/// Initial states worth exploring: all zero, plus one state per variable
/// read by the program with that variable set to 1.
std::vector<State> probe_states(const CCProgram& p);

/// Breadth-first exploration of paired configurations from `(P, epp(P))`
/// for each initial state, checking both directions, the head-shape and
/// call-shape lemmas, projectability preservation, and network determinism
/// and procedure stability at every pair up to `depth` steps.
Verdict verify_epp(const CCProgram& p, std::size_t depth, const std::vector<State>& initial);
Verdict verify_epp(const CCProgram& p, std::size_t depth);

/// Every reachable configuration with main other than end can move.
Verdict check_deadlock_freedom(const CCProgram& p, std::size_t depth, const std::vector<State>& initial);

/// Every pair of distinct transitions from a reachable configuration leads
/// to configurations with a common reachable configuration, searched up to
/// `depth` further steps.
Verdict check_confluence(const CCProgram& p, std::size_t depth, const std::vector<State>& initial);
Verdict check_confluence(const SPProgram& p, std::size_t depth, const std::vector<State>& initial);

}  // namespace chorc
