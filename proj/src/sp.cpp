#include "chorc/sp.hpp"

#include "chorc/fault.hpp"

namespace chorc {

Behaviour Network::at(const Pid& p) const {
  auto it = procs_.find(p);
  return it == procs_.end() ? Behaviour::end() : it->second;
}

void Network::set(const Pid& p, Behaviour b) {
  if (b.is_end()) {
    procs_.erase(p);
  } else {
    procs_.insert_or_assign(p, std::move(b));
  }
}

std::vector<Pid> Network::support() const {
  std::vector<Pid> out;
  out.reserve(procs_.size());
  for (const auto& [p, b] : procs_) out.push_back(p);
  return out;
}

std::size_t Network::hash() const {
  std::size_t h = 0x6a09e667f3bcc908ULL;
  for (const auto& [p, b] : procs_) {
    hash_combine_value(h, p);
    hash_combine(h, b.hash());
  }
  return h;
}

Network net_update(Network n, const Pid& p, Behaviour b) {
  n.set(p, std::move(b));
  return n;
}

Behaviour DefSetB::at(const ProcRef& name) const {
  auto it = defs_.find(name);
  return it == defs_.end() ? Behaviour::end() : it->second;
}

void DefSetB::set(const ProcRef& name, Behaviour b) {
  if (b.is_end()) {
    defs_.erase(name);
  } else {
    defs_.insert_or_assign(name, std::move(b));
  }
}

std::vector<SpTransition> sp_enabled(const DefSetB& defs, const Network& n, const State& s) {
  using N = Behaviour::Node;
  std::vector<SpTransition> out;
  for (const auto& [p, b] : n.entries()) {
    std::visit(overloaded{
                   [&](const N::Send& x) {
                     Behaviour peer = n.at(x.peer);
                     const auto* r = std::get_if<N::Recv>(&peer.node().v);
                     if (!r || r->peer != p || x.peer == p) return;
                     Value v = eval_expr(x.expr, s, p);
                     Network next = n;
                     next.set(p, x.cont);
                     next.set(x.peer, r->cont);
                     out.push_back(SpTransition{SpLabel{SpLabel::Com{p, v, x.peer, r->target}}, std::move(next),
                                                update_state(s, x.peer, r->target, v)});
                   },
                   [&](const N::Select& x) {
                     Behaviour peer = n.at(x.peer);
                     const auto* br = std::get_if<N::Branch>(&peer.node().v);
                     if (!br || br->peer != p || x.peer == p) return;
                     const auto& chosen = br->option(x.label);
                     if (!chosen) return;
                     Behaviour installed = *chosen;
                     if (fault::active() == fault::Kind::swap_selection_branch) {
                       const auto& other = br->option(x.label == Label::left ? Label::right : Label::left);
                       installed = other ? *other : Behaviour::end();
                     }
                     Network next = n;
                     next.set(p, x.cont);
                     next.set(x.peer, std::move(installed));
                     out.push_back(SpTransition{SpLabel{SpLabel::Sel{p, x.peer, x.label}}, std::move(next), s});
                   },
                   [&](const N::Cond& x) {
                     bool taken = eval_bexpr(x.guard, s, p);
                     out.push_back(SpTransition{SpLabel{SpLabel::Cond{p}},
                                                net_update(n, p, taken ? x.then_branch : x.else_branch), s});
                   },
                   [&](const N::Call& x) {
                     out.push_back(SpTransition{SpLabel{SpLabel::Call{x.name, p}}, net_update(n, p, defs.at(x.name)), s});
                   },
                   [](const auto&) {},
               },
               b.node().v);
  }
  return out;
}

SpConfig sp_step(const SPProgram& program, const State& s, const SpLabel& t) {
  for (auto& tr : sp_enabled(program.procs, program.net, s)) {
    if (tr.label == t) return SpConfig{SPProgram{program.procs, std::move(tr.next)}, std::move(tr.state)};
  }
  throw NotEnabled(to_string(t));
}

}  // namespace chorc
