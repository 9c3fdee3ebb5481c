#include "chorc/expr.hpp"

#include <cstdint>

namespace chorc {

namespace {

std::size_t seed_for(std::size_t tag) { return 0x51ed270b27a4c3d1ULL * (tag + 1); }

Value wrap(ArithOp op, Value a, Value b) {
  auto ua = static_cast<std::uint64_t>(a);
  auto ub = static_cast<std::uint64_t>(b);
  std::uint64_t r = 0;
  switch (op) {
    case ArithOp::add: r = ua + ub; break;
    case ArithOp::sub: r = ua - ub; break;
    case ArithOp::mul: r = ua * ub; break;
  }
  return static_cast<Value>(r);
}

int precedence(const Expr& e) {
  if (const auto* bin = std::get_if<Expr::Node::Binary>(&e.node().v)) {
    return bin->op == ArithOp::mul ? 2 : 1;
  }
  return 3;
}

std::string_view symbol(ArithOp op) {
  switch (op) {
    case ArithOp::add: return "+";
    case ArithOp::sub: return "-";
    case ArithOp::mul: return "*";
  }
  return "?";
}

std::string_view symbol(CmpOp op) {
  switch (op) {
    case CmpOp::eq: return "==";
    case CmpOp::le: return "<=";
    case CmpOp::lt: return "<";
  }
  return "?";
}

}  // namespace

Expr Expr::literal(Value v) {
  std::size_t h = seed_for(0);
  hash_combine_value(h, v);
  return Expr(std::make_shared<const Node>(Node{Node::Literal{v}, h}));
}

Expr Expr::var(Var x) {
  std::size_t h = seed_for(1);
  hash_combine_value(h, x);
  return Expr(std::make_shared<const Node>(Node{Node::Ref{std::move(x)}, h}));
}

Expr Expr::binary(ArithOp op, Expr lhs, Expr rhs) {
  std::size_t h = seed_for(2 + static_cast<std::size_t>(op));
  hash_combine(h, lhs.hash());
  hash_combine(h, rhs.hash());
  return Expr(std::make_shared<const Node>(Node{Node::Binary{op, std::move(lhs), std::move(rhs)}, h}));
}

std::size_t Expr::hash() const { return node_->hash; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash()) return false;
  return std::visit(
      overloaded{
          [&](const Expr::Node::Literal& x) {
            const auto* y = std::get_if<Expr::Node::Literal>(&b.node().v);
            return y && x.value == y->value;
          },
          [&](const Expr::Node::Ref& x) {
            const auto* y = std::get_if<Expr::Node::Ref>(&b.node().v);
            return y && x.var == y->var;
          },
          [&](const Expr::Node::Binary& x) {
            const auto* y = std::get_if<Expr::Node::Binary>(&b.node().v);
            return y && x.op == y->op && x.lhs == y->lhs && x.rhs == y->rhs;
          },
      },
      a.node().v);
}

BExpr BExpr::truth(bool value) {
  std::size_t h = seed_for(10 + (value ? 1 : 0));
  return BExpr(std::make_shared<const Node>(Node{Node::Const{value}, h}));
}

BExpr BExpr::compare(CmpOp op, Expr lhs, Expr rhs) {
  std::size_t h = seed_for(12 + static_cast<std::size_t>(op));
  hash_combine(h, lhs.hash());
  hash_combine(h, rhs.hash());
  return BExpr(std::make_shared<const Node>(Node{Node::Compare{op, std::move(lhs), std::move(rhs)}, h}));
}

BExpr BExpr::negate(BExpr operand) {
  std::size_t h = seed_for(15);
  hash_combine(h, operand.hash());
  return BExpr(std::make_shared<const Node>(Node{Node::Not{std::move(operand)}, h}));
}

BExpr BExpr::conj(BExpr lhs, BExpr rhs) {
  std::size_t h = seed_for(16);
  hash_combine(h, lhs.hash());
  hash_combine(h, rhs.hash());
  return BExpr(std::make_shared<const Node>(Node{Node::And{std::move(lhs), std::move(rhs)}, h}));
}

std::size_t BExpr::hash() const { return node_->hash; }

bool operator==(const BExpr& a, const BExpr& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash()) return false;
  return std::visit(
      overloaded{
          [&](const BExpr::Node::Const& x) {
            const auto* y = std::get_if<BExpr::Node::Const>(&b.node().v);
            return y && x.value == y->value;
          },
          [&](const BExpr::Node::Compare& x) {
            const auto* y = std::get_if<BExpr::Node::Compare>(&b.node().v);
            return y && x.op == y->op && x.lhs == y->lhs && x.rhs == y->rhs;
          },
          [&](const BExpr::Node::Not& x) {
            const auto* y = std::get_if<BExpr::Node::Not>(&b.node().v);
            return y && x.operand == y->operand;
          },
          [&](const BExpr::Node::And& x) {
            const auto* y = std::get_if<BExpr::Node::And>(&b.node().v);
            return y && x.lhs == y->lhs && x.rhs == y->rhs;
          },
      },
      a.node().v);
}

Value eval_expr(const Expr& e, const State& s, const Pid& p) {
  return std::visit(overloaded{
                        [](const Expr::Node::Literal& x) { return x.value; },
                        [&](const Expr::Node::Ref& x) { return s.get(p, x.var); },
                        [&](const Expr::Node::Binary& x) {
                          return wrap(x.op, eval_expr(x.lhs, s, p), eval_expr(x.rhs, s, p));
                        },
                    },
                    e.node().v);
}

bool eval_bexpr(const BExpr& b, const State& s, const Pid& p) {
  return std::visit(overloaded{
                        [](const BExpr::Node::Const& x) { return x.value; },
                        [&](const BExpr::Node::Compare& x) {
                          Value l = eval_expr(x.lhs, s, p);
                          Value r = eval_expr(x.rhs, s, p);
                          switch (x.op) {
                            case CmpOp::eq: return l == r;
                            case CmpOp::le: return l <= r;
                            case CmpOp::lt: return l < r;
                          }
                          return false;
                        },
                        [&](const BExpr::Node::Not& x) { return !eval_bexpr(x.operand, s, p); },
                        [&](const BExpr::Node::And& x) {
                          return eval_bexpr(x.lhs, s, p) && eval_bexpr(x.rhs, s, p);
                        },
                    },
                    b.node().v);
}

std::string to_string(const Expr& e) {
  return std::visit(overloaded{
                        [](const Expr::Node::Literal& x) { return std::to_string(x.value); },
                        [](const Expr::Node::Ref& x) { return x.var.str(); },
                        [&](const Expr::Node::Binary& x) {
                          int prec = precedence(e);
                          std::string l = to_string(x.lhs);
                          std::string r = to_string(x.rhs);
                          if (precedence(x.lhs) < prec) l = "(" + l + ")";
                          if (precedence(x.rhs) <= prec) r = "(" + r + ")";
                          return l + " " + std::string(symbol(x.op)) + " " + r;
                        },
                    },
                    e.node().v);
}

std::string to_string(const BExpr& b) {
  return std::visit(
      overloaded{
          [](const BExpr::Node::Const& x) { return std::string(x.value ? "true" : "false"); },
          [](const BExpr::Node::Compare& x) {
            return to_string(x.lhs) + " " + std::string(symbol(x.op)) + " " + to_string(x.rhs);
          },
          [](const BExpr::Node::Not& x) {
            const auto& inner = x.operand.node().v;
            bool atomic = std::holds_alternative<BExpr::Node::Const>(inner) ||
                          std::holds_alternative<BExpr::Node::Not>(inner);
            return atomic ? "!" + to_string(x.operand) : "!(" + to_string(x.operand) + ")";
          },
          [](const BExpr::Node::And& x) {
            std::string r = to_string(x.rhs);
            if (std::holds_alternative<BExpr::Node::And>(x.rhs.node().v)) r = "(" + r + ")";
            return to_string(x.lhs) + " && " + r;
          },
      },
      b.node().v);
}

}  // namespace chorc
