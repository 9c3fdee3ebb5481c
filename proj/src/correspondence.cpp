#include "chorc/correspondence.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "chorc/fault.hpp"
#include "chorc/merge.hpp"
#include "chorc/pruning.hpp"

namespace chorc {

std::string_view to_string(Hypothesis::Kind k) {
  switch (k) {
    case Hypothesis::Kind::program_wf: return "program-wf";
    case Hypothesis::Kind::well_ann: return "well-annotated";
    case Hypothesis::Kind::projectable: return "projectable";
    case Hypothesis::Kind::str_projectable: return "strongly-projectable";
    case Hypothesis::Kind::main_coverage: return "main-coverage";
    case Hypothesis::Kind::vars_coverage: return "vars-coverage";
  }
  return "?";
}

std::string_view to_string(Counterexample::Direction d) {
  using D = Counterexample::Direction;
  switch (d) {
    case D::completeness: return "completeness";
    case D::soundness: return "soundness";
    case D::locality: return "locality";
    case D::determinism: return "determinism";
    case D::procs_stability: return "procs-stability";
    case D::head_shape: return "head-shape";
    case D::preservation: return "preservation";
    case D::invariant: return "invariant";
    case D::deadlock: return "deadlock";
    case D::confluence: return "confluence";
  }
  return "?";
}

std::string_view to_string(Verdict::Status s) {
  switch (s) {
    case Verdict::Status::verified: return "verified";
    case Verdict::Status::counterexample: return "counterexample";
    case Verdict::Status::hypotheses_violated: return "hypotheses-violated";
  }
  return "?";
}

VerifyStats& VerifyStats::operator+=(const VerifyStats& o) {
  configs_explored += o.configs_explored;
  cc_transitions += o.cc_transitions;
  sp_transitions += o.sp_transitions;
  transitions_matched += o.transitions_matched;
  determinism_checks += o.determinism_checks;
  sp_call_labels += o.sp_call_labels;
  return *this;
}

HypothesisReport check_hypotheses(const CCProgram& p, const std::vector<RecVar>& xs, const std::vector<Pid>& ps) {
  using K = Hypothesis::Kind;
  HypothesisReport report;
  auto add = [&](K k, std::string msg) { report.failures.push_back({k, std::move(msg)}); };
  auto in_ps = [&](const Pid& q) { return std::find(ps.begin(), ps.end(), q) != ps.end(); };
  auto in_xs = [&](const RecVar& x) { return std::find(xs.begin(), xs.end(), x) != xs.end(); };

  for (const auto& v : cc_check_wf(p).violations) {
    add(v.rule == "well-annotated" ? K::well_ann : K::program_wf, v.path + ": " + v.message);
  }
  for (const auto& x : called_procedures(p.main)) {
    if (!in_xs(x)) add(K::program_wf, "main calls " + x.str() + ", which is not among the compiled procedures");
  }
  for (const auto& x : xs) {
    const ProcDef* def = p.procs.find(x);
    if (!def) {
      add(K::program_wf, "procedure " + x.str() + " is not defined");
      continue;
    }
    for (const auto& y : called_procedures(def->body)) {
      if (!in_xs(y)) add(K::program_wf, x.str() + " calls " + y.str() + ", which is not among the compiled procedures");
    }
    for (const auto& q : def->vars) {
      if (!in_ps(q)) add(K::vars_coverage, "process " + q.str() + " declared by " + x.str() + " is not projected");
    }
  }
  for (const auto& issue : projectable(xs, ps, p).issues) add(K::projectable, issue.message);
  for (const auto& q : ps) {
    if (!str_projectable(p.procs, p.main, q)) {
      add(K::str_projectable, "main is not strongly projectable on process " + q.str());
    }
  }
  for (const auto& q : ccc_pn(p.main, declared_vars(p.procs))) {
    if (!in_ps(q)) add(K::main_coverage, "process " + q.str() + " of main is not projected");
  }
  return report;
}

namespace {

using D = Counterexample::Direction;

bool prunes(const Network& n, const Network& target) {
  if (fault::active() == fault::Kind::exact_match_only) return n == target;
  return net_more_branches(n, target);
}

std::optional<Network> projected(const EppParams& params, const CCProgram& p) {
  return epp_network(p.procs, params.processes, p.main);
}

Counterexample failure(D d, const PairedConfig& pc, std::optional<TLabel> label, std::string why) {
  return Counterexample{d, pc, std::move(label), std::move(why), {}};
}

PairedConfig successor(const PairedConfig& pc, const Choreography& c, const State& cs, const Network& n,
                       const State& ss) {
  return PairedConfig{CCProgram{pc.cc.procs, c}, cs, SPProgram{pc.sp.procs, n}, ss, pc.depth + 1};
}

// Shapes the projections must have around one choreography step.
std::optional<std::string> check_lemmas(const PairedConfig& pc, const CcTransition& t) {
  using XN = XBehaviour::Node;
  const DefSet& defs = pc.cc.procs;
  const Choreography& c = pc.cc.main;
  auto before = [&](const Pid& r) { return bproj(defs, c, r); };
  auto after = [&](const Pid& r) { return bproj(defs, t.next, r); };
  auto shape_error = [&](const Pid& r, const std::string& expected) {
    return std::optional<std::string>("projection on " + r.str() + " is `" + to_string(before(r)) + "`, expected " +
                                      expected + " for " + to_string(t.label));
  };

  return std::visit(
      overloaded{
          [&](const CcLabel::Com& l) -> std::optional<std::string> {
            auto bp = before(l.sender);
            const auto* send = std::get_if<XN::Send>(&bp.node().v);
            if (!send || send->peer != l.receiver || eval_expr(send->expr, pc.cc_state, l.sender) != l.value) {
              return shape_error(l.sender, "a send to " + l.receiver.str());
            }
            if (!(send->cont == after(l.sender))) return shape_error(l.sender, "the successor's projection as tail");
            auto bq = before(l.receiver);
            const auto* recv = std::get_if<XN::Recv>(&bq.node().v);
            if (!recv || recv->peer != l.sender || recv->target != l.target) {
              return shape_error(l.receiver, "a receive from " + l.sender.str());
            }
            if (!(recv->cont == after(l.receiver))) {
              return shape_error(l.receiver, "the successor's projection as tail");
            }
            return std::nullopt;
          },
          [&](const CcLabel::Sel& l) -> std::optional<std::string> {
            auto bp = before(l.sender);
            const auto* sel = std::get_if<XN::Select>(&bp.node().v);
            if (!sel || sel->peer != l.receiver || sel->label != l.label || !(sel->cont == after(l.sender))) {
              return shape_error(l.sender, "a selection to " + l.receiver.str());
            }
            auto bq = before(l.receiver);
            const auto* br = std::get_if<XN::Branch>(&bq.node().v);
            if (!br || br->peer != l.sender || !br->option(l.label) ||
                !xmore_branches(*br->option(l.label), after(l.receiver))) {
              return shape_error(l.receiver, "a branching on " + l.sender.str() + " offering the label");
            }
            return std::nullopt;
          },
          [&](const CcLabel::Cond& l) -> std::optional<std::string> {
            auto bp = before(l.pid);
            const auto* cond = std::get_if<XN::Cond>(&bp.node().v);
            if (!cond) return shape_error(l.pid, "a conditional");
            const auto& taken = eval_bexpr(cond->guard, pc.cc_state, l.pid) ? cond->then_branch : cond->else_branch;
            if (!(taken == after(l.pid))) return shape_error(l.pid, "the taken branch as successor projection");
            return std::nullopt;
          },
          [&](const CcLabel::Call& l) -> std::optional<std::string> {
            auto bp = before(l.pid);
            if (!(bp == XBehaviour::call(ProcRef{l.name, l.pid}))) {
              return shape_error(l.pid, "call " + to_string(ProcRef{l.name, l.pid}));
            }
            const ProcDef* def = defs.find(l.name);
            if (!def || !xmore_branches(bproj(defs, def->body, l.pid), after(l.pid))) {
              return std::optional<std::string>("projection of " + l.name.str() + " on " + l.pid.str() +
                                                " does not prune to the successor's projection");
            }
            return std::nullopt;
          },
      },
      t.label.v);
}

std::optional<std::string> check_preservation(const EppParams& params, const CCProgram& next) {
  if (auto wf = cc_check_wf(next); !wf.ok()) return "successor is not well-formed: " + wf.violations.front().message;
  if (auto rep = projectable(params.procedures, params.processes, next); !rep.ok()) {
    return "successor is not projectable: " + rep.issues.front().message;
  }
  for (const auto& r : params.processes) {
    if (!str_projectable(next.procs, next.main, r)) return "successor is not strongly projectable on " + r.str();
  }
  return std::nullopt;
}

}  // namespace

StepCheck check_completeness_step(const EppParams& params, const PairedConfig& pc) {
  StepCheck out;
  auto sp_ts = sp_enabled(pc.sp.procs, pc.sp.net, pc.sp_state);
  for (const auto& t : cc_enabled(pc.cc.procs, pc.cc.main, pc.cc_state)) {
    TLabel l = forget(t.label);
    auto target = projected(params, CCProgram{pc.cc.procs, t.next});
    if (!target) {
      out.failure = failure(D::preservation, pc, l, "successor after " + to_string(t.label) + " is not projectable");
      return out;
    }
    auto match = std::find_if(sp_ts.begin(), sp_ts.end(), [&](const SpTransition& u) {
      return forget(u.label) == l && u.state == t.state && prunes(u.next, *target);
    });
    if (match == sp_ts.end()) {
      out.failure = failure(D::completeness, pc, l,
                            "no network transition matches " + to_string(t.label) + " up to pruning");
      return out;
    }
    ++out.matched;
    out.successors.emplace_back(l, successor(pc, t.next, t.state, match->next, match->state));
  }
  return out;
}

StepCheck check_soundness_step(const EppParams& params, const PairedConfig& pc) {
  StepCheck out;
  auto cc_ts = cc_enabled(pc.cc.procs, pc.cc.main, pc.cc_state);
  std::vector<std::optional<Network>> targets;
  targets.reserve(cc_ts.size());
  for (const auto& t : cc_ts) targets.push_back(projected(params, CCProgram{pc.cc.procs, t.next}));

  for (const auto& u : sp_enabled(pc.sp.procs, pc.sp.net, pc.sp_state)) {
    TLabel l = forget(u.label);
    if (const auto* call = std::get_if<SpLabel::Call>(&u.label.v); call && call->name.pid != call->pid) {
      out.failure = failure(D::locality, pc, l, to_string(u.label) + " names a procedure of another process");
      return out;
    }
    std::optional<std::size_t> match;
    for (std::size_t i = 0; i < cc_ts.size() && !match; ++i) {
      if (forget(cc_ts[i].label) == l && cc_ts[i].state == u.state && targets[i] && prunes(u.next, *targets[i])) {
        match = i;
      }
    }
    if (!match) {
      out.failure =
          failure(D::soundness, pc, l, "no choreography transition matches " + to_string(u.label) + " up to pruning");
      return out;
    }
    ++out.matched;
    out.successors.emplace_back(l, successor(pc, cc_ts[*match].next, cc_ts[*match].state, u.next, u.state));
  }
  return out;
}

namespace {

void collect_vars(const Expr& e, std::set<Var>& out) {
  std::visit(overloaded{
                 [&](const Expr::Node::Ref& x) { out.insert(x.var); },
                 [&](const Expr::Node::Binary& x) {
                   collect_vars(x.lhs, out);
                   collect_vars(x.rhs, out);
                 },
                 [](const auto&) {},
             },
             e.node().v);
}

void collect_vars(const BExpr& b, std::set<Var>& out) {
  std::visit(overloaded{
                 [&](const BExpr::Node::Compare& x) {
                   collect_vars(x.lhs, out);
                   collect_vars(x.rhs, out);
                 },
                 [&](const BExpr::Node::Not& x) { collect_vars(x.operand, out); },
                 [&](const BExpr::Node::And& x) {
                   collect_vars(x.lhs, out);
                   collect_vars(x.rhs, out);
                 },
                 [](const auto&) {},
             },
             b.node().v);
}

void collect_reads(const Choreography& c, std::set<State::Cell>& out) {
  using CN = Choreography::Node;
  auto add = [&](const Pid& p, const std::set<Var>& vars) {
    for (const auto& v : vars) out.emplace(p, v);
  };
  std::visit(overloaded{
                 [&](const CN::Interaction& x) {
                   if (const auto* com = std::get_if<Eta::Com>(&x.eta.v)) {
                     std::set<Var> vars;
                     collect_vars(com->expr, vars);
                     add(com->sender, vars);
                   }
                   collect_reads(x.cont, out);
                 },
                 [&](const CN::Cond& x) {
                   std::set<Var> vars;
                   collect_vars(x.guard, vars);
                   add(x.pid, vars);
                   collect_reads(x.then_branch, out);
                   collect_reads(x.else_branch, out);
                 },
                 [&](const CN::RtCall& x) { collect_reads(x.body, out); },
                 [](const auto&) {},
             },
             c.node().v);
}

struct PairKey {
  Choreography main;
  State cc_state;
  Network net;
  State sp_state;

  friend bool operator==(const PairKey&, const PairKey&) = default;
};

struct PairKeyHash {
  std::size_t operator()(const PairKey& k) const {
    std::size_t h = k.main.hash();
    hash_combine(h, k.cc_state.hash());
    hash_combine(h, k.net.hash());
    hash_combine(h, k.sp_state.hash());
    return h;
  }
};

// Breadth-first search bookkeeping with parent links for label paths.
template <class Cfg>
struct SearchTree {
  struct Node {
    Cfg cfg;
    std::optional<std::size_t> parent;
    std::optional<TLabel> via;
    std::size_t depth;
  };
  std::vector<Node> nodes;

  std::vector<TLabel> path(std::size_t i) const {
    std::vector<TLabel> out;
    for (std::optional<std::size_t> at = i; at && nodes[*at].via; at = nodes[*at].parent) out.push_back(*nodes[*at].via);
    std::reverse(out.begin(), out.end());
    return out;
  }
};

Verdict with_counterexample(Verdict v, Counterexample cx) {
  v.status = Verdict::Status::counterexample;
  v.exhaustive = false;
  v.counterexample = std::move(cx);
  return v;
}

// Checks everything that concerns a single explored pair, apart from the
// two matching directions.
std::optional<Counterexample> check_pair(const EppParams& params, const PairedConfig& pc, VerifyStats& stats) {
  auto cc_ts = cc_enabled(pc.cc.procs, pc.cc.main, pc.cc_state);
  auto sp_ts = sp_enabled(pc.sp.procs, pc.sp.net, pc.sp_state);
  stats.cc_transitions += cc_ts.size();
  stats.sp_transitions += sp_ts.size();

  for (const auto& t : cc_ts) {
    if (auto why = check_lemmas(pc, t)) return failure(D::head_shape, pc, forget(t.label), *why);
    if (auto why = check_preservation(params, CCProgram{pc.cc.procs, t.next})) {
      return failure(D::preservation, pc, forget(t.label), *why);
    }
  }
  for (const auto& u : sp_ts) {
    ++stats.determinism_checks;
    if (std::holds_alternative<SpLabel::Call>(u.label.v)) ++stats.sp_call_labels;
    SpConfig replay = sp_step(pc.sp, pc.sp_state, u.label);
    if (!(replay.program.procs == pc.sp.procs)) {
      return failure(D::procs_stability, pc, forget(u.label), to_string(u.label) + " changed procedure definitions");
    }
    for (const auto& other : sp_ts) {
      if (!(other.label == u.label)) continue;
      if (!(other.next == replay.program.net) || !(other.state == replay.state)) {
        return failure(D::determinism, pc, forget(u.label), to_string(u.label) + " has two different outcomes");
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<State> probe_states(const CCProgram& p) {
  std::set<State::Cell> reads;
  collect_reads(p.main, reads);
  for (const auto& [name, def] : p.procs.entries()) collect_reads(def.body, reads);
  std::vector<State> out{State{}};
  for (const auto& [pid, var] : reads) out.push_back(update_state(State{}, pid, var, 1));
  return out;
}

Verdict verify_epp(const CCProgram& p, std::size_t depth) { return verify_epp(p, depth, probe_states(p)); }

Verdict verify_epp(const CCProgram& p, std::size_t depth, const std::vector<State>& initial) {
  Verdict verdict;
  verdict.depth = depth;
  EppParams params = infer_params(p);
  if (auto hyp = check_hypotheses(p, params.procedures, params.processes); !hyp.ok()) {
    verdict.status = Verdict::Status::hypotheses_violated;
    verdict.hypotheses = std::move(hyp);
    return verdict;
  }
  SPProgram compiled = epp(params.procedures, params.processes, p);
  verdict.exhaustive = true;

  for (const auto& s0 : initial) {
    SearchTree<PairedConfig> tree;
    std::unordered_set<PairKey, PairKeyHash> seen;
    std::deque<std::size_t> queue;
    auto enqueue = [&](PairedConfig pc, std::optional<std::size_t> parent,
                       std::optional<TLabel> via) -> std::optional<Counterexample> {
      auto target = projected(params, pc.cc);
      if (!(pc.cc_state == pc.sp_state) || !target || !net_more_branches(pc.sp.net, *target)) {
        auto cx = failure(D::invariant, pc, via, "paired configuration breaks state equality or pruning");
        if (parent) cx.path = tree.path(*parent);
        if (via) cx.path.push_back(*via);
        return cx;
      }
      PairKey key{pc.cc.main, pc.cc_state, pc.sp.net, pc.sp_state};
      if (!seen.insert(std::move(key)).second) return std::nullopt;
      std::size_t d = pc.depth;
      tree.nodes.push_back({std::move(pc), parent, std::move(via), d});
      queue.push_back(tree.nodes.size() - 1);
      return std::nullopt;
    };

    if (auto cx = enqueue(PairedConfig{p, s0, compiled, s0, 0}, std::nullopt, std::nullopt)) {
      return with_counterexample(std::move(verdict), std::move(*cx));
    }
    while (!queue.empty()) {
      std::size_t i = queue.front();
      queue.pop_front();
      const PairedConfig pc = tree.nodes[i].cfg;
      if (pc.depth >= depth) {
        if (!cc_enabled(pc.cc.procs, pc.cc.main, pc.cc_state).empty() ||
            !sp_enabled(pc.sp.procs, pc.sp.net, pc.sp_state).empty()) {
          verdict.exhaustive = false;
        }
        continue;
      }
      ++verdict.stats.configs_explored;
      auto fail = [&](Counterexample cx) {
        cx.path = tree.path(i);
        return with_counterexample(std::move(verdict), std::move(cx));
      };
      if (auto cx = check_pair(params, pc, verdict.stats)) return fail(std::move(*cx));
      StepCheck complete = check_completeness_step(params, pc);
      if (complete.failure) return fail(std::move(*complete.failure));
      StepCheck sound = check_soundness_step(params, pc);
      if (sound.failure) return fail(std::move(*sound.failure));
      verdict.stats.transitions_matched += complete.matched + sound.matched;
      for (auto* step : {&complete, &sound}) {
        for (auto& [label, next] : step->successors) {
          if (auto cx = enqueue(std::move(next), i, label)) return with_counterexample(std::move(verdict), std::move(*cx));
        }
      }
    }
  }
  return verdict;
}

namespace {

struct CcKey {
  Choreography main;
  State state;
  friend bool operator==(const CcKey&, const CcKey&) = default;
};

struct CcKeyHash {
  std::size_t operator()(const CcKey& k) const {
    std::size_t h = k.main.hash();
    hash_combine(h, k.state.hash());
    return h;
  }
};

struct SpKey {
  Network net;
  State state;
  friend bool operator==(const SpKey&, const SpKey&) = default;
};

struct SpKeyHash {
  std::size_t operator()(const SpKey& k) const {
    std::size_t h = k.net.hash();
    hash_combine(h, k.state.hash());
    return h;
  }
};

// One transition system, seen through the operations the generic searches
// need.
struct CcSystem {
  using Key = CcKey;
  using Hash = CcKeyHash;
  static constexpr std::size_t VerifyStats::*transitions = &VerifyStats::cc_transitions;
  const DefSet& defs;

  std::vector<std::pair<TLabel, Key>> successors(const Key& k) const {
    std::vector<std::pair<TLabel, Key>> out;
    for (auto& t : cc_enabled(defs, k.main, k.state)) out.emplace_back(forget(t.label), Key{t.next, t.state});
    return out;
  }
  bool finished(const Key& k) const { return k.main.is_end(); }
  PairedConfig show(const Key& k, std::size_t depth) const {
    return PairedConfig{CCProgram{defs, k.main}, k.state, SPProgram{}, State{}, depth};
  }
};

struct SpSystem {
  using Key = SpKey;
  using Hash = SpKeyHash;
  static constexpr std::size_t VerifyStats::*transitions = &VerifyStats::sp_transitions;
  const DefSetB& defs;

  std::vector<std::pair<TLabel, Key>> successors(const Key& k) const {
    std::vector<std::pair<TLabel, Key>> out;
    for (auto& t : sp_enabled(defs, k.net, k.state)) out.emplace_back(forget(t.label), Key{t.next, t.state});
    return out;
  }
  bool finished(const Key& k) const { return k.net.all_end(); }
  PairedConfig show(const Key& k, std::size_t depth) const {
    return PairedConfig{CCProgram{DefSet{}, Choreography::end()}, State{}, SPProgram{defs, k.net}, k.state, depth};
  }
};

// Level-synchronous search for a configuration reachable from both `a` and
// `b` within `bound` steps each.
template <class System>
bool joinable(const System& sys, const typename System::Key& a, const typename System::Key& b, std::size_t bound) {
  using Key = typename System::Key;
  using Set = std::unordered_set<Key, typename System::Hash>;
  Set seen_a{a}, seen_b{b};
  std::vector<Key> front_a{a}, front_b{b};
  auto advance = [&](std::vector<Key>& front, Set& seen) {
    std::vector<Key> next;
    for (const auto& k : front) {
      for (auto& [label, succ] : sys.successors(k)) {
        if (seen.insert(succ).second) next.push_back(std::move(succ));
      }
    }
    front = std::move(next);
  };
  auto met = [&] {
    return std::any_of(front_a.begin(), front_a.end(), [&](const Key& k) { return seen_b.count(k) > 0; }) ||
           std::any_of(front_b.begin(), front_b.end(), [&](const Key& k) { return seen_a.count(k) > 0; });
  };
  for (std::size_t level = 0;; ++level) {
    if (met()) return true;
    if (level == bound || (front_a.empty() && front_b.empty())) return false;
    advance(front_a, seen_a);
    advance(front_b, seen_b);
  }
}

// Explores every configuration reachable within `depth` steps and calls
// `visit(key, successors)` on each; a returned explanation stops the search.
template <class System, class Visit>
Verdict explore(const System& sys, std::size_t depth, const std::vector<typename System::Key>& roots, Visit visit) {
  using Key = typename System::Key;
  Verdict verdict;
  verdict.depth = depth;
  verdict.exhaustive = true;
  for (const auto& root : roots) {
    SearchTree<Key> tree;
    std::unordered_set<Key, typename System::Hash> seen{root};
    tree.nodes.push_back({root, std::nullopt, std::nullopt, 0});
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
      const Key k = tree.nodes[i].cfg;
      const std::size_t d = tree.nodes[i].depth;
      auto succs = sys.successors(k);
      if (d >= depth) {
        if (!succs.empty()) verdict.exhaustive = false;
        continue;
      }
      ++verdict.stats.configs_explored;
      verdict.stats.*System::transitions += succs.size();
      if (auto why = visit(k, succs)) {
        Counterexample cx{why->first, sys.show(k, d), std::nullopt, why->second, tree.path(i)};
        return with_counterexample(std::move(verdict), std::move(cx));
      }
      for (auto& [label, next] : succs) {
        if (seen.insert(next).second) tree.nodes.push_back({next, i, label, d + 1});
      }
    }
  }
  return verdict;
}

template <class System>
Verdict confluence(const System& sys, std::size_t depth, const std::vector<typename System::Key>& roots) {
  using Key = typename System::Key;
  using Result = std::optional<std::pair<D, std::string>>;
  return explore(sys, depth, roots, [&](const Key&, const std::vector<std::pair<TLabel, Key>>& succs) -> Result {
    for (std::size_t i = 0; i < succs.size(); ++i) {
      for (std::size_t j = i + 1; j < succs.size(); ++j) {
        if (succs[i].second == succs[j].second) continue;
        if (!joinable(sys, succs[i].second, succs[j].second, depth)) {
          return std::make_pair(D::confluence, "transitions " + to_string(succs[i].first) + " and " +
                                                   to_string(succs[j].first) + " do not join within " +
                                                   std::to_string(depth) + " steps");
        }
      }
    }
    return std::nullopt;
  });
}

}  // namespace

Verdict check_deadlock_freedom(const CCProgram& p, std::size_t depth, const std::vector<State>& initial) {
  CcSystem sys{p.procs};
  std::vector<CcKey> roots;
  for (const auto& s : initial) roots.push_back({p.main, s});
  using Result = std::optional<std::pair<D, std::string>>;
  return explore(sys, depth, roots, [&](const CcKey& k, const auto& succs) -> Result {
    if (succs.empty() && !sys.finished(k)) return std::make_pair(D::deadlock, "configuration cannot move");
    return std::nullopt;
  });
}

Verdict check_confluence(const CCProgram& p, std::size_t depth, const std::vector<State>& initial) {
  CcSystem sys{p.procs};
  std::vector<CcKey> roots;
  for (const auto& s : initial) roots.push_back({p.main, s});
  return confluence(sys, depth, roots);
}

Verdict check_confluence(const SPProgram& p, std::size_t depth, const std::vector<State>& initial) {
  SpSystem sys{p.procs};
  std::vector<SpKey> roots;
  for (const auto& s : initial) roots.push_back({p.net, s});
  return confluence(sys, depth, roots);
}

}  // namespace chorc
