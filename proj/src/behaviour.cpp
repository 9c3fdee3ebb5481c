#include "chorc/behaviour.hpp"

namespace chorc {

namespace {

std::size_t tag_seed(std::size_t tag) { return 0x9fb21c651e98df25ULL * (tag + 7); }

void hash_option(std::size_t& h, const auto& opt) {
  hash_combine(h, opt ? opt->hash() : 0x7f4a7c15ULL);
}

template <bool Extended>
std::string print(const BasicBehaviour<Extended>& b) {
  using N = typename BasicBehaviour<Extended>::Node;
  return std::visit(overloaded{
                        [](const typename N::End&) { return std::string("end"); },
                        [](const typename N::Send& x) {
                          return x.peer.str() + "!" + to_string(x.expr) + "; " + print(x.cont);
                        },
                        [](const typename N::Recv& x) {
                          return x.peer.str() + "?" + x.target.str() + "; " + print(x.cont);
                        },
                        [](const typename N::Select& x) {
                          return x.peer.str() + "(+)" + std::string(to_string(x.label)) + "; " + print(x.cont);
                        },
                        [](const typename N::Branch& x) {
                          std::string body;
                          if (x.on_left) body += "left: " + print(*x.on_left);
                          if (x.on_right) {
                            if (!body.empty()) body += ", ";
                            body += "right: " + print(*x.on_right);
                          }
                          return x.peer.str() + " & { " + body + (body.empty() ? "}" : " }");
                        },
                        [](const typename N::Cond& x) {
                          return "if " + to_string(x.guard) + " then { " + print(x.then_branch) + " } else { " +
                                 print(x.else_branch) + " }";
                        },
                        [](const typename N::Call& x) { return "call " + to_string(x.name); },
                        [](const typename N::Undefined&) { return std::string("undefined"); },
                    },
                    b.node().v);
}

}  // namespace

template <bool Extended>
BasicBehaviour<Extended> BasicBehaviour<Extended>::end() {
  static const auto node = std::make_shared<const Node>(Node{typename Node::End{}, tag_seed(0)});
  return BasicBehaviour(node);
}

template <bool Extended>
BasicBehaviour<Extended> BasicBehaviour<Extended>::send(Pid peer, Expr expr, BasicBehaviour cont) {
  std::size_t h = tag_seed(1);
  hash_combine_value(h, peer);
  hash_combine(h, expr.hash());
  hash_combine(h, cont.hash());
  return BasicBehaviour(
      std::make_shared<const Node>(Node{typename Node::Send{std::move(peer), std::move(expr), std::move(cont)}, h}));
}

template <bool Extended>
BasicBehaviour<Extended> BasicBehaviour<Extended>::recv(Pid peer, Var target, BasicBehaviour cont) {
  std::size_t h = tag_seed(2);
  hash_combine_value(h, peer);
  hash_combine_value(h, target);
  hash_combine(h, cont.hash());
  return BasicBehaviour(
      std::make_shared<const Node>(Node{typename Node::Recv{std::move(peer), std::move(target), std::move(cont)}, h}));
}

template <bool Extended>
BasicBehaviour<Extended> BasicBehaviour<Extended>::select(Pid peer, Label label, BasicBehaviour cont) {
  std::size_t h = tag_seed(3);
  hash_combine_value(h, peer);
  hash_combine(h, static_cast<std::size_t>(label));
  hash_combine(h, cont.hash());
  return BasicBehaviour(
      std::make_shared<const Node>(Node{typename Node::Select{std::move(peer), label, std::move(cont)}, h}));
}

template <bool Extended>
BasicBehaviour<Extended> BasicBehaviour<Extended>::branch(Pid peer, Option on_left, Option on_right) {
  std::size_t h = tag_seed(4);
  hash_combine_value(h, peer);
  hash_option(h, on_left);
  hash_option(h, on_right);
  return BasicBehaviour(std::make_shared<const Node>(
      Node{typename Node::Branch{std::move(peer), std::move(on_left), std::move(on_right)}, h}));
}

template <bool Extended>
BasicBehaviour<Extended> BasicBehaviour<Extended>::cond(BExpr guard, BasicBehaviour then_branch,
                                                        BasicBehaviour else_branch) {
  std::size_t h = tag_seed(5);
  hash_combine(h, guard.hash());
  hash_combine(h, then_branch.hash());
  hash_combine(h, else_branch.hash());
  return BasicBehaviour(std::make_shared<const Node>(
      Node{typename Node::Cond{std::move(guard), std::move(then_branch), std::move(else_branch)}, h}));
}

template <bool Extended>
BasicBehaviour<Extended> BasicBehaviour<Extended>::call(ProcRef name) {
  std::size_t h = tag_seed(6);
  hash_combine_value(h, name);
  return BasicBehaviour(std::make_shared<const Node>(Node{typename Node::Call{std::move(name)}, h}));
}

template <bool Extended>
BasicBehaviour<Extended> BasicBehaviour<Extended>::undefined()
  requires Extended
{
  static const auto node = std::make_shared<const Node>(Node{typename Node::Undefined{}, tag_seed(7)});
  return BasicBehaviour(node);
}

template <bool Extended>
std::size_t BasicBehaviour<Extended>::hash() const {
  return node_->hash;
}

template <bool Extended>
bool BasicBehaviour<Extended>::is_end() const {
  return std::holds_alternative<typename Node::End>(node_->v);
}

template <bool Extended>
bool BasicBehaviour<Extended>::is_undefined() const {
  if constexpr (Extended) {
    return std::holds_alternative<typename Node::Undefined>(node_->v);
  } else {
    return false;
  }
}

template <bool Extended>
bool BasicBehaviour<Extended>::equal(const BasicBehaviour& a, const BasicBehaviour& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.node_->v.index() != b.node_->v.index()) return false;
  const auto& bv = b.node_->v;
  return std::visit(overloaded{
                        [](const typename Node::End&) { return true; },
                        [&](const typename Node::Send& x) {
                          const auto& y = std::get<typename Node::Send>(bv);
                          return x.peer == y.peer && x.expr == y.expr && x.cont == y.cont;
                        },
                        [&](const typename Node::Recv& x) {
                          const auto& y = std::get<typename Node::Recv>(bv);
                          return x.peer == y.peer && x.target == y.target && x.cont == y.cont;
                        },
                        [&](const typename Node::Select& x) {
                          const auto& y = std::get<typename Node::Select>(bv);
                          return x.peer == y.peer && x.label == y.label && x.cont == y.cont;
                        },
                        [&](const typename Node::Branch& x) {
                          const auto& y = std::get<typename Node::Branch>(bv);
                          return x.peer == y.peer && x.on_left == y.on_left && x.on_right == y.on_right;
                        },
                        [&](const typename Node::Cond& x) {
                          const auto& y = std::get<typename Node::Cond>(bv);
                          return x.guard == y.guard && x.then_branch == y.then_branch &&
                                 x.else_branch == y.else_branch;
                        },
                        [&](const typename Node::Call& x) { return x.name == std::get<typename Node::Call>(bv).name; },
                        [](const typename Node::Undefined&) { return true; },
                    },
                    a.node_->v);
}

template class BasicBehaviour<false>;
template class BasicBehaviour<true>;

std::string_view to_string(HeadShape shape) {
  switch (shape) {
    case HeadShape::end: return "end";
    case HeadShape::send: return "send";
    case HeadShape::recv: return "recv";
    case HeadShape::select: return "select";
    case HeadShape::branch: return "branch";
    case HeadShape::cond: return "cond";
    case HeadShape::call: return "call";
    case HeadShape::undefined: return "undefined";
  }
  return "?";
}

std::string to_string(const Behaviour& b) { return print(b); }
std::string to_string(const XBehaviour& b) { return print(b); }

}  // namespace chorc
