#pragma once

#include <string>
#include <variant>
#include <vector>

#include "chorc/ident.hpp"
#include "chorc/state.hpp"

namespace chorc {

/// Observable transition label: what an outside observer of the system sees.
struct TLabel {
  struct Com {
    Pid sender;
    Value value;
    Pid receiver;
    friend bool operator==(const Com&, const Com&) = default;
  };
  struct Sel {
    Pid sender;
    Pid receiver;
    Label label;
    friend bool operator==(const Sel&, const Sel&) = default;
  };
  struct Tau {
    Pid pid;
    friend bool operator==(const Tau&, const Tau&) = default;
  };

  std::variant<Com, Sel, Tau> v;

  friend bool operator==(const TLabel&, const TLabel&) = default;
};

/// Transition label carrying everything needed to replay a step. Generic in
/// the procedure-name alphabet: RecVar for choreographies, ProcRef for
/// process networks.
template <class ProcName>
struct RichLabel {
  struct Com {
    Pid sender;
    Value value;
    Pid receiver;
    Var target;
    friend bool operator==(const Com&, const Com&) = default;
  };
  struct Sel {
    Pid sender;
    Pid receiver;
    Label label;
    friend bool operator==(const Sel&, const Sel&) = default;
  };
  struct Cond {
    Pid pid;
    friend bool operator==(const Cond&, const Cond&) = default;
  };
  struct Call {
    ProcName name;
    Pid pid;
    friend bool operator==(const Call&, const Call&) = default;
  };

  std::variant<Com, Sel, Cond, Call> v;

  friend bool operator==(const RichLabel&, const RichLabel&) = default;
};

using CcLabel = RichLabel<RecVar>;
using SpLabel = RichLabel<ProcRef>;

template <class ProcName>
TLabel forget(const RichLabel<ProcName>& t) {
  using L = RichLabel<ProcName>;
  return std::visit(overloaded{
                        [](const typename L::Com& c) { return TLabel{TLabel::Com{c.sender, c.value, c.receiver}}; },
                        [](const typename L::Sel& c) { return TLabel{TLabel::Sel{c.sender, c.receiver, c.label}}; },
                        [](const typename L::Cond& c) { return TLabel{TLabel::Tau{c.pid}}; },
                        [](const typename L::Call& c) { return TLabel{TLabel::Tau{c.pid}}; },
                    },
                    t.v);
}

/// Processes involved in a transition, in label order.
template <class ProcName>
std::vector<Pid> participants(const RichLabel<ProcName>& t) {
  using L = RichLabel<ProcName>;
  return std::visit(overloaded{
                        [](const typename L::Com& c) { return std::vector<Pid>{c.sender, c.receiver}; },
                        [](const typename L::Sel& c) { return std::vector<Pid>{c.sender, c.receiver}; },
                        [](const typename L::Cond& c) { return std::vector<Pid>{c.pid}; },
                        [](const typename L::Call& c) { return std::vector<Pid>{c.pid}; },
                    },
                    t.v);
}

std::vector<Pid> participants(const TLabel& t);

std::string to_string(const TLabel& t);
std::string to_string(const CcLabel& t);
std::string to_string(const SpLabel& t);

}  // namespace chorc
