#include "chorc/pruning.hpp"

#include <set>

namespace chorc {

namespace {

template <bool Extended>
bool relate(const BasicBehaviour<Extended>& b, const BasicBehaviour<Extended>& pruned) {
  using N = typename BasicBehaviour<Extended>::Node;
  if (b.node().v.index() != pruned.node().v.index()) return false;
  const auto& pv = pruned.node().v;
  return std::visit(overloaded{
                        [](const typename N::End&) { return true; },
                        [&](const typename N::Send& x) {
                          const auto& y = std::get<typename N::Send>(pv);
                          return x.peer == y.peer && x.expr == y.expr && relate(x.cont, y.cont);
                        },
                        [&](const typename N::Recv& x) {
                          const auto& y = std::get<typename N::Recv>(pv);
                          return x.peer == y.peer && x.target == y.target && relate(x.cont, y.cont);
                        },
                        [&](const typename N::Select& x) {
                          const auto& y = std::get<typename N::Select>(pv);
                          return x.peer == y.peer && x.label == y.label && relate(x.cont, y.cont);
                        },
                        [&](const typename N::Branch& x) {
                          const auto& y = std::get<typename N::Branch>(pv);
                          if (x.peer != y.peer) return false;
                          for (Label l : {Label::left, Label::right}) {
                            const auto& mine = x.option(l);
                            const auto& theirs = y.option(l);
                            if (!theirs) continue;
                            if (!mine || !relate(*mine, *theirs)) return false;
                          }
                          return true;
                        },
                        [&](const typename N::Cond& x) {
                          const auto& y = std::get<typename N::Cond>(pv);
                          return x.guard == y.guard && relate(x.then_branch, y.then_branch) &&
                                 relate(x.else_branch, y.else_branch);
                        },
                        [&](const typename N::Call& x) { return x.name == std::get<typename N::Call>(pv).name; },
                        [](const typename N::Undefined&) { return true; },
                    },
                    b.node().v);
}

}  // namespace

bool more_branches(const Behaviour& b, const Behaviour& pruned) { return relate(b, pruned); }

bool xmore_branches(const XBehaviour& b, const XBehaviour& pruned) { return relate(b, pruned); }

bool net_more_branches(const Network& n, const Network& pruned) {
  std::set<Pid> pids;
  for (const auto& [p, b] : n.entries()) pids.insert(p);
  for (const auto& [p, b] : pruned.entries()) pids.insert(p);
  for (const auto& p : pids) {
    if (!more_branches(n.at(p), pruned.at(p))) return false;
  }
  return true;
}

}  // namespace chorc
