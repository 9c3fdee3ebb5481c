#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <variant>

#include "chorc/ident.hpp"
#include "chorc/state.hpp"

namespace chorc {

enum class ArithOp { add, sub, mul };
enum class CmpOp { eq, le, lt };

/// Integer expressions evaluated against one process's variables.
class Expr {
 public:
  struct Node;

  static Expr literal(Value v);
  static Expr var(Var x);
  static Expr binary(ArithOp op, Expr lhs, Expr rhs);

  const Node& node() const { return *node_; }
  std::size_t hash() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Expr::Node {
  struct Literal {
    Value value;
  };
  struct Ref {
    Var var;
  };
  struct Binary {
    ArithOp op;
    Expr lhs;
    Expr rhs;
  };

  std::variant<Literal, Ref, Binary> v;
  std::size_t hash = 0;
};

class BExpr {
 public:
  struct Node;

  static BExpr truth(bool value);
  static BExpr compare(CmpOp op, Expr lhs, Expr rhs);
  static BExpr negate(BExpr operand);
  static BExpr conj(BExpr lhs, BExpr rhs);

  const Node& node() const { return *node_; }
  std::size_t hash() const;

  friend bool operator==(const BExpr& a, const BExpr& b);

 private:
  explicit BExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct BExpr::Node {
  struct Const {
    bool value;
  };
  struct Compare {
    CmpOp op;
    Expr lhs;
    Expr rhs;
  };
  struct Not {
    BExpr operand;
  };
  struct And {
    BExpr lhs;
    BExpr rhs;
  };

  std::variant<Const, Compare, Not, And> v;
  std::size_t hash = 0;
};

/// Arithmetic wraps modulo 2^64.
Value eval_expr(const Expr& e, const State& s, const Pid& p);
bool eval_bexpr(const BExpr& b, const State& s, const Pid& p);

std::string to_string(const Expr& e);
std::string to_string(const BExpr& b);

}  // namespace chorc
