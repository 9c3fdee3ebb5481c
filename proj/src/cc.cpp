#include "chorc/cc.hpp"

#include <algorithm>

#include "chorc/fault.hpp"

namespace chorc {

namespace {

std::size_t tag_seed(std::size_t tag) { return 0x2545f4914f6cdd1dULL * (tag + 31); }

template <class T>
bool contains(const std::vector<T>& xs, const T& x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

std::vector<Pid> without(const std::vector<Pid>& ps, const Pid& p) {
  std::vector<Pid> out;
  out.reserve(ps.size());
  for (const auto& q : ps) {
    if (q != p) out.push_back(q);
  }
  return out;
}

bool disjoint(const std::vector<Pid>& a, const std::vector<Pid>& b) {
  return std::none_of(a.begin(), a.end(), [&](const Pid& p) { return contains(b, p); });
}

bool has_duplicates(const std::vector<Pid>& ps) {
  std::set<Pid> seen(ps.begin(), ps.end());
  return seen.size() != ps.size();
}

std::string join(const std::vector<Pid>& ps) {
  std::string out;
  for (const auto& p : ps) {
    if (!out.empty()) out += ", ";
    out += p.str();
  }
  return out;
}

}  // namespace

Eta Eta::com(Pid sender, Expr expr, Pid receiver, Var target) {
  return Eta{Com{std::move(sender), std::move(expr), std::move(receiver), std::move(target)}};
}

Eta Eta::sel(Pid sender, Pid receiver, Label label) {
  return Eta{Sel{std::move(sender), std::move(receiver), label}};
}

const Pid& Eta::sender() const {
  return std::visit([](const auto& e) -> const Pid& { return e.sender; }, v);
}

const Pid& Eta::receiver() const {
  return std::visit([](const auto& e) -> const Pid& { return e.receiver; }, v);
}

std::size_t Eta::hash() const {
  return std::visit(overloaded{
                        [](const Com& c) {
                          std::size_t h = tag_seed(0);
                          hash_combine_value(h, c.sender);
                          hash_combine(h, c.expr.hash());
                          hash_combine_value(h, c.receiver);
                          hash_combine_value(h, c.target);
                          return h;
                        },
                        [](const Sel& c) {
                          std::size_t h = tag_seed(1);
                          hash_combine_value(h, c.sender);
                          hash_combine_value(h, c.receiver);
                          hash_combine(h, static_cast<std::size_t>(c.label));
                          return h;
                        },
                    },
                    v);
}

Choreography Choreography::interaction(Eta eta, Choreography cont) {
  std::size_t h = tag_seed(10);
  hash_combine(h, eta.hash());
  hash_combine(h, cont.hash());
  return Choreography(std::make_shared<const Node>(Node{Node::Interaction{std::move(eta), std::move(cont)}, h}));
}

Choreography Choreography::cond(Pid pid, BExpr guard, Choreography then_branch, Choreography else_branch) {
  std::size_t h = tag_seed(11);
  hash_combine_value(h, pid);
  hash_combine(h, guard.hash());
  hash_combine(h, then_branch.hash());
  hash_combine(h, else_branch.hash());
  return Choreography(std::make_shared<const Node>(
      Node{Node::Cond{std::move(pid), std::move(guard), std::move(then_branch), std::move(else_branch)}, h}));
}

Choreography Choreography::call(RecVar name) {
  std::size_t h = tag_seed(12);
  hash_combine_value(h, name);
  return Choreography(std::make_shared<const Node>(Node{Node::Call{std::move(name)}, h}));
}

Choreography Choreography::rt_call(RecVar name, std::vector<Pid> pending, Choreography body) {
  std::size_t h = tag_seed(13);
  hash_combine_value(h, name);
  for (const auto& p : pending) hash_combine_value(h, p);
  hash_combine(h, body.hash());
  return Choreography(
      std::make_shared<const Node>(Node{Node::RtCall{std::move(name), std::move(pending), std::move(body)}, h}));
}

Choreography Choreography::end() {
  static const auto node = std::make_shared<const Node>(Node{Node::End{}, tag_seed(14)});
  return Choreography(node);
}

std::size_t Choreography::hash() const { return node_->hash; }

bool Choreography::is_end() const { return std::holds_alternative<Node::End>(node_->v); }

bool operator==(const Choreography& a, const Choreography& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.node().v.index() != b.node().v.index()) return false;
  using N = Choreography::Node;
  return std::visit(overloaded{
                        [&](const N::Interaction& x) {
                          const auto& y = std::get<N::Interaction>(b.node().v);
                          return x.eta == y.eta && x.cont == y.cont;
                        },
                        [&](const N::Cond& x) {
                          const auto& y = std::get<N::Cond>(b.node().v);
                          return x.pid == y.pid && x.guard == y.guard && x.then_branch == y.then_branch &&
                                 x.else_branch == y.else_branch;
                        },
                        [&](const N::Call& x) { return x.name == std::get<N::Call>(b.node().v).name; },
                        [&](const N::RtCall& x) {
                          const auto& y = std::get<N::RtCall>(b.node().v);
                          return x.name == y.name && x.pending == y.pending && x.body == y.body;
                        },
                        [](const N::End&) { return true; },
                    },
                    a.node().v);
}

DefSet::DefSet() : defs_(std::make_shared<const std::map<RecVar, ProcDef>>()) {}

void DefSet::define(RecVar name, std::vector<Pid> vars, Choreography body) {
  auto copy = std::make_shared<std::map<RecVar, ProcDef>>(*defs_);
  copy->insert_or_assign(std::move(name), ProcDef{std::move(vars), std::move(body)});
  defs_ = std::move(copy);
}

const ProcDef* DefSet::find(const RecVar& name) const {
  auto it = defs_->find(name);
  return it == defs_->end() ? nullptr : &it->second;
}

const std::vector<Pid>& DefSet::vars_of(const RecVar& name) const {
  static const std::vector<Pid> none;
  const ProcDef* def = find(name);
  return def ? def->vars : none;
}

bool operator==(const DefSet& a, const DefSet& b) { return a.defs_ == b.defs_ || *a.defs_ == *b.defs_; }

bool is_initial(const Choreography& c) {
  using N = Choreography::Node;
  return std::visit(overloaded{
                        [](const N::Interaction& x) { return is_initial(x.cont); },
                        [](const N::Cond& x) { return is_initial(x.then_branch) && is_initial(x.else_branch); },
                        [](const N::Call&) { return true; },
                        [](const N::RtCall&) { return false; },
                        [](const N::End&) { return true; },
                    },
                    c.node().v);
}

VarsOf declared_vars(const DefSet& defs) {
  return [defs](const RecVar& x) { return defs.vars_of(x); };
}

VarsOf no_vars() {
  return [](const RecVar&) { return std::vector<Pid>{}; };
}

std::set<Pid> ccc_pn(const Choreography& c, const VarsOf& vars_of) {
  std::set<Pid> out;
  using N = Choreography::Node;
  std::function<void(const Choreography&)> walk = [&](const Choreography& t) {
    std::visit(overloaded{
                   [&](const N::Interaction& x) {
                     out.insert(x.eta.sender());
                     out.insert(x.eta.receiver());
                     walk(x.cont);
                   },
                   [&](const N::Cond& x) {
                     out.insert(x.pid);
                     walk(x.then_branch);
                     walk(x.else_branch);
                   },
                   [&](const N::Call& x) {
                     for (const auto& p : vars_of(x.name)) out.insert(p);
                   },
                   [&](const N::RtCall& x) {
                     out.insert(x.pending.begin(), x.pending.end());
                     walk(x.body);
                   },
                   [](const N::End&) {},
               },
               t.node().v);
  };
  walk(c);
  return out;
}

std::set<RecVar> called_procedures(const Choreography& c) {
  std::set<RecVar> out;
  using N = Choreography::Node;
  std::function<void(const Choreography&)> walk = [&](const Choreography& t) {
    std::visit(overloaded{
                   [&](const N::Interaction& x) { walk(x.cont); },
                   [&](const N::Cond& x) {
                     walk(x.then_branch);
                     walk(x.else_branch);
                   },
                   [&](const N::Call& x) { out.insert(x.name); },
                   [&](const N::RtCall& x) {
                     out.insert(x.name);
                     walk(x.body);
                   },
                   [](const N::End&) {},
               },
               t.node().v);
  };
  walk(c);
  return out;
}

WfReport cc_check_wf(const CCProgram& program) {
  WfReport report;
  const DefSet& defs = program.procs;
  auto add = [&](int restriction, std::string rule, AstPath path, std::string message) {
    report.violations.push_back(WfViolation{restriction, std::move(rule), std::move(path), std::move(message)});
  };

  using N = Choreography::Node;
  // in_body: rtCall terms are forbidden outright.
  std::function<void(const Choreography&, const AstPath&, bool)> walk = [&](const Choreography& t,
                                                                            const AstPath& path, bool in_body) {
    std::visit(overloaded{
                   [&](const N::Interaction& x) {
                     if (x.eta.sender() == x.eta.receiver()) {
                       add(1, "self-communication", path,
                           "process " + x.eta.sender().str() + " communicates with itself");
                     }
                     walk(x.cont, path + "/next", in_body);
                   },
                   [&](const N::Cond& x) {
                     walk(x.then_branch, path + "/then", in_body);
                     walk(x.else_branch, path + "/else", in_body);
                   },
                   [&](const N::Call& x) {
                     if (!defs.find(x.name)) {
                       add(3, "undefined-procedure", path, "call to undefined procedure " + x.name.str());
                     }
                   },
                   [&](const N::RtCall& x) {
                     if (in_body) {
                       add(2, "initial-body", path, "runtime call to " + x.name.str() + " inside a procedure body");
                     }
                     if (!defs.find(x.name)) {
                       add(3, "undefined-procedure", path, "runtime call to undefined procedure " + x.name.str());
                     }
                     if (x.pending.empty()) {
                       add(2, "pending-nonempty", path, "runtime call to " + x.name.str() + " has no pending processes");
                     }
                     if (has_duplicates(x.pending)) {
                       add(2, "pending-distinct", path, "runtime call to " + x.name.str() + " lists a process twice");
                     }
                     const auto& vars = defs.vars_of(x.name);
                     for (const auto& p : x.pending) {
                       if (!contains(vars, p)) {
                         add(2, "pending-declared", path,
                             "pending process " + p.str() + " is not declared by " + x.name.str());
                       }
                     }
                     walk(x.body, path + "/body", in_body);
                   },
                   [](const N::End&) {},
               },
               t.node().v);
  };

  walk(program.main, "main", false);
  const VarsOf vars_of = declared_vars(defs);
  for (const auto& [name, def] : defs.entries()) {
    if (def.vars.empty()) {
      add(3, "vars-nonempty", name.str(), "procedure " + name.str() + " declares no processes");
    }
    if (has_duplicates(def.vars)) {
      add(3, "vars-distinct", name.str(), "procedure " + name.str() + " declares a process twice");
    }
    walk(def.body, name.str(), true);
    std::vector<Pid> undeclared;
    for (const auto& p : ccc_pn(def.body, vars_of)) {
      if (!contains(def.vars, p)) undeclared.push_back(p);
    }
    if (!undeclared.empty()) {
      add(3, "well-annotated", name.str(),
          "procedure " + name.str() + " uses undeclared processes " + join(undeclared) + " (declared: " +
              join(def.vars) + ")");
    }
  }
  return report;
}

std::vector<CcTransition> cc_enabled(const DefSet& defs, const Choreography& c, const State& s) {
  using N = Choreography::Node;
  std::vector<CcTransition> out;
  std::visit(
      overloaded{
          [&](const N::Interaction& x) {
            std::visit(overloaded{
                           [&](const Eta::Com& e) {
                             Value v = eval_expr(e.expr, s, e.sender);
                             out.push_back(CcTransition{CcLabel{CcLabel::Com{e.sender, v, e.receiver, e.target}},
                                                        x.cont, update_state(s, e.receiver, e.target, v)});
                           },
                           [&](const Eta::Sel& e) {
                             out.push_back(
                                 CcTransition{CcLabel{CcLabel::Sel{e.sender, e.receiver, e.label}}, x.cont, s});
                           },
                       },
                       x.eta.v);
            if (fault::active() == fault::Kind::no_delay_eta) return;
            const std::vector<Pid> busy{x.eta.sender(), x.eta.receiver()};
            for (auto& t : cc_enabled(defs, x.cont, s)) {
              if (disjoint(participants(t.label), busy)) {
                out.push_back(CcTransition{std::move(t.label), Choreography::interaction(x.eta, std::move(t.next)),
                                           std::move(t.state)});
              }
            }
          },
          [&](const N::Cond& x) {
            bool taken = eval_bexpr(x.guard, s, x.pid);
            out.push_back(CcTransition{CcLabel{CcLabel::Cond{x.pid}}, taken ? x.then_branch : x.else_branch, s});
            auto lefts = cc_enabled(defs, x.then_branch, s);
            if (lefts.empty()) return;
            auto rights = cc_enabled(defs, x.else_branch, s);
            for (auto& l : lefts) {
              if (contains(participants(l.label), x.pid)) continue;
              auto match = std::find_if(rights.begin(), rights.end(), [&](const CcTransition& r) {
                return r.label == l.label && r.state == l.state;
              });
              if (match != rights.end()) {
                out.push_back(CcTransition{l.label, Choreography::cond(x.pid, x.guard, l.next, match->next), l.state});
              }
            }
          },
          [&](const N::Call& x) {
            const ProcDef* def = defs.find(x.name);
            if (!def) return;
            for (const auto& p : def->vars) {
              Choreography next = def->vars.size() >= 2 ? Choreography::rt_call(x.name, without(def->vars, p), def->body)
                                                        : def->body;
              out.push_back(CcTransition{CcLabel{CcLabel::Call{x.name, p}}, std::move(next), s});
            }
          },
          [&](const N::RtCall& x) {
            for (const auto& p : x.pending) {
              Choreography next =
                  x.pending.size() >= 2 ? Choreography::rt_call(x.name, without(x.pending, p), x.body) : x.body;
              out.push_back(CcTransition{CcLabel{CcLabel::Call{x.name, p}}, std::move(next), s});
            }
            for (auto& t : cc_enabled(defs, x.body, s)) {
              if (disjoint(participants(t.label), x.pending)) {
                out.push_back(CcTransition{std::move(t.label), Choreography::rt_call(x.name, x.pending, std::move(t.next)),
                                           std::move(t.state)});
              }
            }
          },
          [](const N::End&) {},
      },
      c.node().v);
  return out;
}

CcConfig cc_step(const CCProgram& program, const State& s, const CcLabel& t) {
  for (auto& tr : cc_enabled(program.procs, program.main, s)) {
    if (tr.label == t) return CcConfig{CCProgram{program.procs, std::move(tr.next)}, std::move(tr.state)};
  }
  throw NotEnabled(to_string(t));
}

}  // namespace chorc
