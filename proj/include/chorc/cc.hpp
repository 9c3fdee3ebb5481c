#pragma once

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "chorc/expr.hpp"
#include "chorc/ident.hpp"
#include "chorc/labels.hpp"
#include "chorc/state.hpp"

namespace chorc {

/// A single communication action: a value communication `p.e -> q.x` or a
/// label selection `p -> q[l]`.
struct Eta {
  struct Com {
    Pid sender;
    Expr expr;
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

  std::variant<Com, Sel> v;

  static Eta com(Pid sender, Expr expr, Pid receiver, Var target);
  static Eta sel(Pid sender, Pid receiver, Label label);

  const Pid& sender() const;
  const Pid& receiver() const;
  std::size_t hash() const;

  friend bool operator==(const Eta&, const Eta&) = default;
};

/// Immutable choreography term with structural sharing. Equality is
/// structural; each node caches its structural hash.
class Choreography {
 public:
  struct Node;

  static Choreography interaction(Eta eta, Choreography cont);
  static Choreography cond(Pid pid, BExpr guard, Choreography then_branch, Choreography else_branch);
  static Choreography call(RecVar name);
  /// Runtime term: procedure `name` entered by some of its processes, with
  /// `pending` still to enter. Not expressible in source files.
  static Choreography rt_call(RecVar name, std::vector<Pid> pending, Choreography body);
  static Choreography end();

  const Node& node() const { return *node_; }
  std::size_t hash() const;
  bool is_end() const;

  friend bool operator==(const Choreography& a, const Choreography& b);

 private:
  explicit Choreography(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Choreography::Node {
  struct Interaction {
    Eta eta;
    Choreography cont;
  };
  struct Cond {
    Pid pid;
    BExpr guard;
    Choreography then_branch;
    Choreography else_branch;
  };
  struct Call {
    RecVar name;
  };
  struct RtCall {
    RecVar name;
    std::vector<Pid> pending;
    Choreography body;
  };
  struct End {};

  std::variant<Interaction, Cond, Call, RtCall, End> v;
  std::size_t hash = 0;
};

struct ProcDef {
  std::vector<Pid> vars;
  Choreography body;
  friend bool operator==(const ProcDef&, const ProcDef&) = default;
};

/// Procedure definitions: name -> (declared processes, body). Copies share
/// storage; `define` copies on write.
class DefSet {
 public:
  DefSet();

  void define(RecVar name, std::vector<Pid> vars, Choreography body);
  const ProcDef* find(const RecVar& name) const;
  /// Declared processes of `name`; empty when undefined.
  const std::vector<Pid>& vars_of(const RecVar& name) const;
  const std::map<RecVar, ProcDef>& entries() const { return *defs_; }

  friend bool operator==(const DefSet& a, const DefSet& b);

 private:
  std::shared_ptr<const std::map<RecVar, ProcDef>> defs_;
};

struct CCProgram {
  DefSet procs;
  Choreography main;
  friend bool operator==(const CCProgram&, const CCProgram&) = default;
};

/// AST paths address subterms as `root/step/step...`, where root is `main`
/// or a procedure name and each step is one of `next` (continuation of an
/// interaction), `then`, `else` or `body` (of a runtime call).
using AstPath = std::string;

struct WfViolation {
  int restriction;  // 1, 2 or 3
  std::string rule;
  AstPath path;
  std::string message;
};

struct WfReport {
  std::vector<WfViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks the three families of restrictions on programs: (1) no
/// self-communication; (2) procedure bodies are initial, and runtime calls
/// in main have non-empty, duplicate-free pending lists within the declared
/// processes; (3) declarations are non-empty and duplicate-free, every
/// called procedure is defined, and each body only uses declared processes.
WfReport cc_check_wf(const CCProgram& program);

bool is_initial(const Choreography& c);

using VarsOf = std::function<std::vector<Pid>(const RecVar&)>;

/// Calls contribute their declared processes.
VarsOf declared_vars(const DefSet& defs);
/// Calls contribute nothing.
VarsOf no_vars();

std::set<Pid> ccc_pn(const Choreography& c, const VarsOf& vars_of);

/// Procedure names occurring in `call` or runtime-call subterms.
std::set<RecVar> called_procedures(const Choreography& c);

struct CcTransition {
  CcLabel label;
  Choreography next;
  State state;
};

/// All single transitions of `c` in `s`. Order: the head rule first, then
/// delayed transitions in left-to-right syntactic order; procedure entries
/// follow the declared (or pending) list order.
std::vector<CcTransition> cc_enabled(const DefSet& defs, const Choreography& c, const State& s);

class NotEnabled : public std::runtime_error {
 public:
  explicit NotEnabled(const std::string& label) : std::runtime_error("transition not enabled: " + label) {}
};

struct CcConfig {
  CCProgram program;
  State state;
};

/// Throws NotEnabled when `t` is not among the enabled transitions.
CcConfig cc_step(const CCProgram& program, const State& s, const CcLabel& t);

}  // namespace chorc

template <>
struct std::hash<chorc::Choreography> {
  std::size_t operator()(const chorc::Choreography& c) const noexcept { return c.hash(); }
};
