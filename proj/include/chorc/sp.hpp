#pragma once

#include <map>
#include <vector>

#include "chorc/behaviour.hpp"
#include "chorc/cc.hpp"
#include "chorc/labels.hpp"
#include "chorc/state.hpp"

namespace chorc {

/// Parallel composition of processes: pid -> behaviour, with every unmapped
/// pid running `end`. Explicit `end` entries are never stored, so structural
/// equality is extensional equality.
class Network {
 public:
  Network() = default;

  Behaviour at(const Pid& p) const;
  /// In-place `N ~~ p | p[B]`.
  void set(const Pid& p, Behaviour b);

  const std::map<Pid, Behaviour>& entries() const { return procs_; }
  std::vector<Pid> support() const;
  bool all_end() const { return procs_.empty(); }
  std::size_t hash() const;

  friend bool operator==(const Network&, const Network&) = default;

 private:
  std::map<Pid, Behaviour> procs_;
};

Network net_update(Network n, const Pid& p, Behaviour b);

/// Procedure bodies on the process side, keyed by (procedure, process);
/// missing entries read as `end`.
class DefSetB {
 public:
  Behaviour at(const ProcRef& name) const;
  void set(const ProcRef& name, Behaviour b);
  const std::map<ProcRef, Behaviour>& entries() const { return defs_; }

  friend bool operator==(const DefSetB&, const DefSetB&) = default;

 private:
  std::map<ProcRef, Behaviour> defs_;
};

struct SPProgram {
  DefSetB procs;
  Network net;
  friend bool operator==(const SPProgram&, const SPProgram&) = default;
};

struct SpTransition {
  SpLabel label;
  Network next;
  State state;
};

/// All single transitions of the network. Processes are visited in pid
/// order; each one able to send, select, decide or call contributes at most
/// one transition (sends are paired with their unique receiver).
std::vector<SpTransition> sp_enabled(const DefSetB& defs, const Network& n, const State& s);

struct SpConfig {
  SPProgram program;
  State state;
};

/// Throws NotEnabled when `t` is not among the enabled transitions.
SpConfig sp_step(const SPProgram& program, const State& s, const SpLabel& t);

}  // namespace chorc
