#include "chorc/epp.hpp"

#include <algorithm>
#include <set>

#include "chorc/fault.hpp"
#include "chorc/merge.hpp"
#include "chorc/pruning.hpp"

namespace chorc {

namespace {

using CN = Choreography::Node;

template <class T>
bool contains(const std::vector<T>& xs, const T& x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

bool defined(const XBehaviour& b) { return !collapse(b).is_undefined(); }

void diagnose_into(const DefSet& defs, const Choreography& c, const Pid& r, const AstPath& path,
                   std::vector<ProjectionFailure>& out) {
  std::visit(overloaded{
                 [&](const CN::Interaction& x) { diagnose_into(defs, x.cont, r, path + "/next", out); },
                 [&](const CN::Cond& x) {
                   diagnose_into(defs, x.then_branch, r, path + "/then", out);
                   diagnose_into(defs, x.else_branch, r, path + "/else", out);
                   if (x.pid == r) return;
                   XBehaviour left = bproj(defs, x.then_branch, r);
                   XBehaviour right = bproj(defs, x.else_branch, r);
                   if (defined(left) && defined(right) && xmerge(left, right).is_undefined()) {
                     out.push_back(ProjectionFailure{r, std::nullopt, path, ProjectionFailure::Kind::merge_conflict,
                                                     merge_conflict(left, right)});
                   }
                 },
                 [&](const CN::RtCall& x) {
                   if (!contains(x.pending, r)) diagnose_into(defs, x.body, r, path + "/body", out);
                 },
                 [](const auto&) {},
             },
             c.node().v);
}

}  // namespace

XBehaviour bproj(const DefSet& defs, const Choreography& c, const Pid& r) {
  return std::visit(
      overloaded{
          [&](const CN::Interaction& x) {
            return std::visit(
                overloaded{
                    [&](const Eta::Com& e) {
                      if (e.sender == r) return XBehaviour::send(e.receiver, e.expr, bproj(defs, x.cont, r));
                      if (e.receiver == r) return XBehaviour::recv(e.sender, e.target, bproj(defs, x.cont, r));
                      return bproj(defs, x.cont, r);
                    },
                    [&](const Eta::Sel& e) {
                      if (e.sender == r) {
                        if (fault::active() == fault::Kind::drop_selection_projection) return bproj(defs, x.cont, r);
                        return XBehaviour::select(e.receiver, e.label, bproj(defs, x.cont, r));
                      }
                      if (e.receiver == r) {
                        XBehaviour cont = bproj(defs, x.cont, r);
                        return e.label == Label::left ? XBehaviour::branch(e.sender, cont, std::nullopt)
                                                      : XBehaviour::branch(e.sender, std::nullopt, cont);
                      }
                      return bproj(defs, x.cont, r);
                    },
                },
                x.eta.v);
          },
          [&](const CN::Cond& x) {
            XBehaviour t = bproj(defs, x.then_branch, r);
            XBehaviour e = bproj(defs, x.else_branch, r);
            if (x.pid == r) return XBehaviour::cond(x.guard, std::move(t), std::move(e));
            return xmerge(t, e);
          },
          [&](const CN::Call& x) {
            return contains(defs.vars_of(x.name), r) ? XBehaviour::call(ProcRef{x.name, r}) : XBehaviour::end();
          },
          [&](const CN::RtCall& x) {
            if (fault::active() != fault::Kind::rt_call_ignores_pending && contains(x.pending, r)) {
              return XBehaviour::call(ProcRef{x.name, r});
            }
            return bproj(defs, x.body, r);
          },
          [](const CN::End&) { return XBehaviour::end(); },
      },
      c.node().v);
}

std::vector<std::pair<Pid, XBehaviour>> epp_list(const DefSet& defs, const Choreography& c,
                                                 const std::vector<Pid>& ps) {
  std::vector<std::pair<Pid, XBehaviour>> out;
  out.reserve(ps.size());
  for (const auto& p : ps) out.emplace_back(p, collapse(bproj(defs, c, p)));
  return out;
}

std::vector<ProjectionFailure> diagnose_projection(const DefSet& defs, const Choreography& c, const Pid& r,
                                                   const AstPath& root) {
  std::vector<ProjectionFailure> out;
  diagnose_into(defs, c, r, root, out);
  if (out.empty() && !defined(bproj(defs, c, r))) {
    out.push_back(ProjectionFailure{r, std::nullopt, root, ProjectionFailure::Kind::other, std::nullopt});
  }
  return out;
}

std::vector<ProjectionFailure> projectable_c(const DefSet& defs, const std::vector<Pid>& ps, const Choreography& c) {
  std::vector<ProjectionFailure> out;
  for (const auto& p : ps) {
    auto failures = diagnose_projection(defs, c, p, "main");
    out.insert(out.end(), failures.begin(), failures.end());
  }
  return out;
}

std::vector<ProjectionFailure> projectable_d(const std::vector<RecVar>& xs, const DefSet& defs) {
  std::vector<ProjectionFailure> out;
  for (const auto& x : xs) {
    const ProcDef* def = defs.find(x);
    if (!def) continue;
    for (const auto& p : def->vars) {
      for (auto& f : diagnose_projection(defs, def->body, p, x.str())) {
        f.procedure = x;
        out.push_back(std::move(f));
      }
    }
  }
  return out;
}

std::string_view to_string(ProjectabilityIssue::Conjunct c) {
  using C = ProjectabilityIssue::Conjunct;
  switch (c) {
    case C::main_projectable: return "main-projectable";
    case C::defs_projectable: return "defs-projectable";
    case C::main_coverage: return "main-coverage";
    case C::vars_coverage: return "vars-coverage";
    case C::body_coverage: return "body-coverage";
    case C::procedure_coverage: return "procedure-coverage";
  }
  return "?";
}

ProjectabilityReport projectable(const std::vector<RecVar>& xs, const std::vector<Pid>& ps, const CCProgram& p) {
  using C = ProjectabilityIssue::Conjunct;
  ProjectabilityReport report;
  auto& issues = report.issues;
  const DefSet& defs = p.procs;

  for (auto& f : projectable_c(defs, ps, p.main)) {
    std::string msg = "main is not projectable on process " + f.process.str();
    issues.push_back(ProjectabilityIssue{C::main_projectable, f.process, std::nullopt, std::move(f), std::move(msg)});
  }
  for (auto& f : projectable_d(xs, defs)) {
    std::string msg = "procedure " + f.procedure->str() + " is not projectable on process " + f.process.str();
    issues.push_back(ProjectabilityIssue{C::defs_projectable, f.process, f.procedure, std::move(f), std::move(msg)});
  }
  for (const auto& q : ccc_pn(p.main, no_vars())) {
    if (!contains(ps, q)) {
      issues.push_back({C::main_coverage, q, std::nullopt, std::nullopt,
                        "process " + q.str() + " is used in main but not among the projected processes"});
    }
  }
  for (const auto& x : xs) {
    for (const auto& q : defs.vars_of(x)) {
      if (!contains(ps, q)) {
        issues.push_back({C::vars_coverage, q, x, std::nullopt,
                          "process " + q.str() + " is declared by " + x.str() + " but not projected"});
      }
    }
    if (const ProcDef* def = defs.find(x)) {
      for (const auto& q : ccc_pn(def->body, no_vars())) {
        if (!contains(ps, q)) {
          issues.push_back({C::body_coverage, q, x, std::nullopt,
                            "process " + q.str() + " is used by " + x.str() + " but not projected"});
        }
      }
    }
  }
  std::set<RecVar> needed = called_procedures(p.main);
  for (const auto& x : xs) {
    if (const ProcDef* def = defs.find(x)) {
      auto inner = called_procedures(def->body);
      needed.insert(inner.begin(), inner.end());
    }
  }
  for (const auto& x : needed) {
    if (!contains(xs, x)) {
      issues.push_back({C::procedure_coverage, std::nullopt, x, std::nullopt,
                        "procedure " + x.str() + " is called but not among the compiled procedures"});
    }
  }
  return report;
}

EppParams infer_params(const CCProgram& p) {
  const DefSet& defs = p.procs;
  std::set<RecVar> reached;
  std::vector<RecVar> work;
  for (const auto& x : called_procedures(p.main)) work.push_back(x);
  while (!work.empty()) {
    RecVar x = work.back();
    work.pop_back();
    const ProcDef* def = defs.find(x);
    if (!def || !reached.insert(x).second) continue;
    for (const auto& y : called_procedures(def->body)) {
      if (!reached.count(y)) work.push_back(y);
    }
  }

  std::set<Pid> pids = ccc_pn(p.main, declared_vars(defs));
  for (const auto& x : reached) {
    const ProcDef* def = defs.find(x);
    pids.insert(def->vars.begin(), def->vars.end());
    auto used = ccc_pn(def->body, no_vars());
    pids.insert(used.begin(), used.end());
  }
  return EppParams{{reached.begin(), reached.end()}, {pids.begin(), pids.end()}};
}

bool str_projectable(const DefSet& defs, const Choreography& c, const Pid& r) {
  return std::visit(overloaded{
                        [&](const CN::Interaction& x) { return str_projectable(defs, x.cont, r); },
                        [&](const CN::Cond& x) {
                          if (!str_projectable(defs, x.then_branch, r) || !str_projectable(defs, x.else_branch, r)) {
                            return false;
                          }
                          return x.pid == r ||
                                 !xmerge(bproj(defs, x.then_branch, r), bproj(defs, x.else_branch, r)).is_undefined();
                        },
                        [&](const CN::RtCall& x) {
                          if (!str_projectable(defs, x.body, r)) return false;
                          const ProcDef* def = defs.find(x.name);
                          if (!def) return false;
                          return std::all_of(x.pending.begin(), x.pending.end(), [&](const Pid& p) {
                            return contains(def->vars, p) &&
                                   xmore_branches(bproj(defs, def->body, p), bproj(defs, x.body, p));
                          });
                        },
                        [](const auto&) { return true; },
                    },
                    c.node().v);
}

namespace {

std::string summarize(const ProjectabilityReport& report) {
  std::string out = "program is not projectable";
  if (!report.issues.empty()) out += ": " + report.issues.front().message;
  return out;
}

}  // namespace

NotProjectable::NotProjectable(ProjectabilityReport report)
    : std::runtime_error(summarize(report)), report_(std::move(report)) {}

std::optional<Network> epp_network(const DefSet& defs, const std::vector<Pid>& ps, const Choreography& c) {
  Network net;
  for (const auto& p : ps) {
    auto b = to_behaviour(bproj(defs, c, p));
    if (!b) return std::nullopt;
    net.set(p, std::move(*b));
  }
  return net;
}

SPProgram epp(const std::vector<RecVar>& xs, const std::vector<Pid>& ps, const CCProgram& p) {
  ProjectabilityReport report = projectable(xs, ps, p);
  if (!report.ok()) throw NotProjectable(std::move(report));
  SPProgram out;
  out.net = *epp_network(p.procs, ps, p.main);
  for (const auto& x : xs) {
    const ProcDef* def = p.procs.find(x);
    if (!def) continue;
    for (const auto& q : def->vars) {
      out.procs.set(ProcRef{x, q}, *to_behaviour(bproj(p.procs, def->body, q)));
    }
  }
  return out;
}

}  // namespace chorc
