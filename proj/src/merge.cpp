#include "chorc/merge.hpp"

#include <string>

namespace chorc {

namespace {

using BN = Behaviour::Node;
using XN = XBehaviour::Node;

bool contains_undefined(const XBehaviour& b) {
  return std::visit(overloaded{
                        [](const XN::End&) { return false; },
                        [](const XN::Send& x) { return contains_undefined(x.cont); },
                        [](const XN::Recv& x) { return contains_undefined(x.cont); },
                        [](const XN::Select& x) { return contains_undefined(x.cont); },
                        [](const XN::Branch& x) {
                          return (x.on_left && contains_undefined(*x.on_left)) ||
                                 (x.on_right && contains_undefined(*x.on_right));
                        },
                        [](const XN::Cond& x) {
                          return contains_undefined(x.then_branch) || contains_undefined(x.else_branch);
                        },
                        [](const XN::Call&) { return false; },
                        [](const XN::Undefined&) { return true; },
                    },
                    b.node().v);
}

// Combination of one branch option per the option table.
XBehaviour::Option merge_option(const XBehaviour::Option& a, const XBehaviour::Option& b) {
  if (!a) return b;
  if (!b) return a;
  return xmerge(*a, *b);
}

bool is_some_undefined(const XBehaviour::Option& o) { return o && o->is_undefined(); }

}  // namespace

XBehaviour inject(const Behaviour& b) {
  return std::visit(
      overloaded{
          [](const BN::End&) { return XBehaviour::end(); },
          [](const BN::Send& x) { return XBehaviour::send(x.peer, x.expr, inject(x.cont)); },
          [](const BN::Recv& x) { return XBehaviour::recv(x.peer, x.target, inject(x.cont)); },
          [](const BN::Select& x) { return XBehaviour::select(x.peer, x.label, inject(x.cont)); },
          [](const BN::Branch& x) {
            return XBehaviour::branch(x.peer, x.on_left ? XBehaviour::Option(inject(*x.on_left)) : std::nullopt,
                                      x.on_right ? XBehaviour::Option(inject(*x.on_right)) : std::nullopt);
          },
          [](const BN::Cond& x) { return XBehaviour::cond(x.guard, inject(x.then_branch), inject(x.else_branch)); },
          [](const BN::Call& x) { return XBehaviour::call(x.name); },
      },
      b.node().v);
}

XBehaviour collapse(const XBehaviour& b) { return contains_undefined(b) ? XBehaviour::undefined() : b; }

std::optional<Behaviour> to_behaviour(const XBehaviour& b) {
  if (contains_undefined(b)) return std::nullopt;
  // Total from here on: no undefined subterm remains.
  struct Convert {
    Behaviour operator()(const XBehaviour& t) const {
      return std::visit(
          overloaded{
              [](const XN::End&) { return Behaviour::end(); },
              [this](const XN::Send& x) { return Behaviour::send(x.peer, x.expr, (*this)(x.cont)); },
              [this](const XN::Recv& x) { return Behaviour::recv(x.peer, x.target, (*this)(x.cont)); },
              [this](const XN::Select& x) { return Behaviour::select(x.peer, x.label, (*this)(x.cont)); },
              [this](const XN::Branch& x) {
                return Behaviour::branch(x.peer, x.on_left ? Behaviour::Option((*this)(*x.on_left)) : std::nullopt,
                                         x.on_right ? Behaviour::Option((*this)(*x.on_right)) : std::nullopt);
              },
              [this](const XN::Cond& x) {
                return Behaviour::cond(x.guard, (*this)(x.then_branch), (*this)(x.else_branch));
              },
              [](const XN::Call& x) { return Behaviour::call(x.name); },
              [](const XN::Undefined&) -> Behaviour { throw std::logic_error("undefined subterm"); },
          },
          t.node().v);
    }
  };
  return Convert{}(b);
}

XBehaviour xmerge(const XBehaviour& a, const XBehaviour& b) {
  const auto undefined = XBehaviour::undefined();
  if (a.node().v.index() != b.node().v.index()) return undefined;
  const auto& bv = b.node().v;
  return std::visit(
      overloaded{
          [&](const XN::End&) { return XBehaviour::end(); },
          [&](const XN::Send& x) {
            const auto& y = std::get<XN::Send>(bv);
            if (x.peer != y.peer || !(x.expr == y.expr)) return undefined;
            XBehaviour m = xmerge(x.cont, y.cont);
            return m.is_undefined() ? undefined : XBehaviour::send(x.peer, x.expr, std::move(m));
          },
          [&](const XN::Recv& x) {
            const auto& y = std::get<XN::Recv>(bv);
            if (x.peer != y.peer || x.target != y.target) return undefined;
            XBehaviour m = xmerge(x.cont, y.cont);
            return m.is_undefined() ? undefined : XBehaviour::recv(x.peer, x.target, std::move(m));
          },
          [&](const XN::Select& x) {
            const auto& y = std::get<XN::Select>(bv);
            if (x.peer != y.peer || x.label != y.label) return undefined;
            XBehaviour m = xmerge(x.cont, y.cont);
            return m.is_undefined() ? undefined : XBehaviour::select(x.peer, x.label, std::move(m));
          },
          [&](const XN::Branch& x) {
            const auto& y = std::get<XN::Branch>(bv);
            if (x.peer != y.peer) return undefined;
            auto left = merge_option(x.on_left, y.on_left);
            auto right = merge_option(x.on_right, y.on_right);
            if (is_some_undefined(left) || is_some_undefined(right)) return undefined;
            return XBehaviour::branch(x.peer, std::move(left), std::move(right));
          },
          [&](const XN::Cond& x) {
            const auto& y = std::get<XN::Cond>(bv);
            if (!(x.guard == y.guard)) return undefined;
            XBehaviour t = xmerge(x.then_branch, y.then_branch);
            if (t.is_undefined()) return undefined;
            XBehaviour e = xmerge(x.else_branch, y.else_branch);
            if (e.is_undefined()) return undefined;
            return XBehaviour::cond(x.guard, std::move(t), std::move(e));
          },
          [&](const XN::Call& x) {
            return x.name == std::get<XN::Call>(bv).name ? XBehaviour::call(x.name) : undefined;
          },
          [&](const XN::Undefined&) { return undefined; },
      },
      a.node().v);
}

XBehaviour merge(const Behaviour& a, const Behaviour& b) { return xmerge(inject(a), inject(b)); }

std::optional<std::pair<XBehaviour, XBehaviour>> merge_conflict(const XBehaviour& a, const XBehaviour& b) {
  if (!xmerge(a, b).is_undefined()) return std::nullopt;
  auto here = std::make_optional(std::make_pair(a, b));
  if (a.node().v.index() != b.node().v.index() || a.is_undefined()) return here;
  const auto& bv = b.node().v;
  auto deeper = [&](const XBehaviour& l, const XBehaviour& r) {
    auto inner = merge_conflict(l, r);
    return inner ? inner : here;
  };
  return std::visit(
      overloaded{
          [&](const XN::Send& x) {
            const auto& y = std::get<XN::Send>(bv);
            return (x.peer != y.peer || !(x.expr == y.expr)) ? here : deeper(x.cont, y.cont);
          },
          [&](const XN::Recv& x) {
            const auto& y = std::get<XN::Recv>(bv);
            return (x.peer != y.peer || x.target != y.target) ? here : deeper(x.cont, y.cont);
          },
          [&](const XN::Select& x) {
            const auto& y = std::get<XN::Select>(bv);
            return (x.peer != y.peer || x.label != y.label) ? here : deeper(x.cont, y.cont);
          },
          [&](const XN::Branch& x) {
            const auto& y = std::get<XN::Branch>(bv);
            if (x.peer != y.peer) return here;
            for (Label l : {Label::left, Label::right}) {
              const auto& lo = x.option(l);
              const auto& ro = y.option(l);
              if (lo && ro && xmerge(*lo, *ro).is_undefined()) return deeper(*lo, *ro);
            }
            return here;
          },
          [&](const XN::Cond& x) {
            const auto& y = std::get<XN::Cond>(bv);
            if (!(x.guard == y.guard)) return here;
            if (xmerge(x.then_branch, y.then_branch).is_undefined()) return deeper(x.then_branch, y.then_branch);
            return deeper(x.else_branch, y.else_branch);
          },
          [&](const auto&) { return here; },
      },
      a.node().v);
}

MergeInversion merge_invert(const Behaviour& left, const Behaviour& right, HeadShape query) {
  auto merged = to_behaviour(merge(left, right));
  if (!merged) throw NotInvertible("merge is undefined");
  if (head_shape(*merged) != query) {
    throw NotInvertible("merge result has head " + std::string(to_string(head_shape(*merged))) + ", not " +
                        std::string(to_string(query)));
  }
  MergeInversion inv{query, *merged, {}, {}};
  const auto& lv = left.node().v;
  const auto& rv = right.node().v;
  const auto& mv = merged->node().v;
  switch (query) {
    case HeadShape::send: {
      const auto& l = std::get<BN::Send>(lv);
      inv.obligations.push_back({l.cont, std::get<BN::Send>(rv).cont, std::get<BN::Send>(mv).cont});
      break;
    }
    case HeadShape::recv: {
      const auto& l = std::get<BN::Recv>(lv);
      inv.obligations.push_back({l.cont, std::get<BN::Recv>(rv).cont, std::get<BN::Recv>(mv).cont});
      break;
    }
    case HeadShape::select: {
      const auto& l = std::get<BN::Select>(lv);
      inv.obligations.push_back({l.cont, std::get<BN::Select>(rv).cont, std::get<BN::Select>(mv).cont});
      break;
    }
    case HeadShape::cond: {
      const auto& l = std::get<BN::Cond>(lv);
      const auto& r = std::get<BN::Cond>(rv);
      const auto& m = std::get<BN::Cond>(mv);
      inv.obligations.push_back({l.then_branch, r.then_branch, m.then_branch});
      inv.obligations.push_back({l.else_branch, r.else_branch, m.else_branch});
      break;
    }
    case HeadShape::branch: {
      const auto& l = std::get<BN::Branch>(lv);
      const auto& r = std::get<BN::Branch>(rv);
      const auto& m = std::get<BN::Branch>(mv);
      for (Label lab : {Label::left, Label::right}) {
        const auto& lo = l.option(lab);
        const auto& ro = r.option(lab);
        auto& source = inv.options[static_cast<std::size_t>(lab)];
        if (lo && ro) {
          source = OptionSource::merged;
          inv.obligations.push_back({*lo, *ro, *m.option(lab)});
        } else if (lo) {
          source = OptionSource::from_left;
        } else if (ro) {
          source = OptionSource::from_right;
        } else {
          source = OptionSource::absent;
        }
      }
      break;
    }
    case HeadShape::end:
    case HeadShape::call:
    case HeadShape::undefined:
      break;
  }
  return inv;
}

}  // namespace chorc
