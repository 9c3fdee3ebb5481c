#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>

#include "chorc/expr.hpp"
#include "chorc/ident.hpp"

namespace chorc {

/// Process behaviours. `Extended = true` adds the `undefined` constructor
/// used as the codomain of merging and projection; `Behaviour` and
/// `XBehaviour` are otherwise identical trees.
template <bool Extended>
class BasicBehaviour {
 public:
  struct Node;
  using Option = std::optional<BasicBehaviour>;

  static BasicBehaviour end();
  static BasicBehaviour send(Pid peer, Expr expr, BasicBehaviour cont);
  static BasicBehaviour recv(Pid peer, Var target, BasicBehaviour cont);
  static BasicBehaviour select(Pid peer, Label label, BasicBehaviour cont);
  static BasicBehaviour branch(Pid peer, Option on_left, Option on_right);
  static BasicBehaviour cond(BExpr guard, BasicBehaviour then_branch, BasicBehaviour else_branch);
  static BasicBehaviour call(ProcRef name);
  static BasicBehaviour undefined()
    requires Extended;

  const Node& node() const { return *node_; }
  std::size_t hash() const;
  bool is_end() const;
  bool is_undefined() const;

  friend bool operator==(const BasicBehaviour& a, const BasicBehaviour& b) { return equal(a, b); }

 private:
  explicit BasicBehaviour(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static bool equal(const BasicBehaviour& a, const BasicBehaviour& b);

  std::shared_ptr<const Node> node_;
};

template <bool Extended>
struct BasicBehaviour<Extended>::Node {
  struct End {};
  struct Send {
    Pid peer;
    Expr expr;
    BasicBehaviour cont;
  };
  struct Recv {
    Pid peer;
    Var target;
    BasicBehaviour cont;
  };
  struct Select {
    Pid peer;
    Label label;
    BasicBehaviour cont;
  };
  struct Branch {
    Pid peer;
    Option on_left;
    Option on_right;

    const Option& option(Label l) const { return l == Label::left ? on_left : on_right; }
  };
  struct Cond {
    BExpr guard;
    BasicBehaviour then_branch;
    BasicBehaviour else_branch;
  };
  struct Call {
    ProcRef name;
  };
  struct Undefined {};

  using Variant = std::conditional_t<Extended, std::variant<End, Send, Recv, Select, Branch, Cond, Call, Undefined>,
                                     std::variant<End, Send, Recv, Select, Branch, Cond, Call>>;

  Variant v;
  std::size_t hash = 0;
};

using Behaviour = BasicBehaviour<false>;
using XBehaviour = BasicBehaviour<true>;

extern template class BasicBehaviour<false>;
extern template class BasicBehaviour<true>;

/// Head constructor of a behaviour, shared by both variants.
enum class HeadShape { end, send, recv, select, branch, cond, call, undefined };

template <bool Extended>
HeadShape head_shape(const BasicBehaviour<Extended>& b) {
  return static_cast<HeadShape>(b.node().v.index());
}

std::string_view to_string(HeadShape shape);

/// Concrete syntax: `q!e; B`, `q?x; B`, `q(+)l; B`,
/// `p & { left: B1, right: B2 }` (absent options omitted),
/// `if b then { B1 } else { B2 }`, `call X@p`, `end`, and `undefined`.
std::string to_string(const Behaviour& b);
std::string to_string(const XBehaviour& b);

}  // namespace chorc

template <bool Extended>
struct std::hash<chorc::BasicBehaviour<Extended>> {
  std::size_t operator()(const chorc::BasicBehaviour<Extended>& b) const noexcept { return b.hash(); }
};
