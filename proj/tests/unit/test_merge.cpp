#include "doctest.h"
#include "testkit.hpp"

#include "chorc/merge.hpp"
#include "chorc/pruning.hpp"
#include "chorc/sp.hpp"

using namespace chorc;
using namespace testkit;
using B = Behaviour;
using XB = XBehaviour;

namespace {

const std::vector<B>& space2() {
  static const auto v = small_behaviours(2);
  return v;
}
const std::vector<B>& space3() {
  static const auto v = small_behaviours(3);
  return v;
}

XB lifted(const std::optional<B>& b) { return b ? inject(*b) : XB::undefined(); }

}  // namespace

TEST_CASE("small-term space") {
  // 1 + 8n + 2(n+1)^2 + n^2 terms at each level, from n = 1.
  CHECK(space2().size() == 18);
  CHECK(space3().size() == 1191);
  std::unordered_set<B> distinct(space3().begin(), space3().end());
  CHECK(distinct.size() == space3().size());
}

TEST_CASE("inject and collapse") {
  CHECK(inject(B::end()) == XB::end());
  CHECK(inject(B::branch(P("p"), B::end(), std::nullopt)) == XB::branch(P("p"), XB::end(), std::nullopt));
  CHECK(collapse(XB::send(P("p"), ref("x"), XB::undefined())) == XB::undefined());
  CHECK(collapse(XB::branch(P("p"), std::nullopt, XB::undefined())) == XB::undefined());
  for (const auto& b : space3()) {
    XB x = inject(b);
    CHECK_FALSE(x.is_undefined());
    CHECK(collapse(x) == x);
    CHECK(to_behaviour(x) == b);
  }
  CHECK_FALSE(to_behaviour(XB::recv(P("p"), V("x"), XB::undefined())).has_value());
}

TEST_CASE("merge examples") {
  CHECK(xmerge(XB::branch(P("p"), XB::end(), std::nullopt), XB::branch(P("p"), std::nullopt, XB::end())) ==
        XB::branch(P("p"), XB::end(), XB::end()));
  CHECK(xmerge(XB::end(), XB::end()) == XB::end());
  CHECK(xmerge(inject(B::recv(P("s"), V("t"), B::end())), XB::end()) == XB::undefined());
  CHECK(merge(B::select(P("q"), Label::left, B::end()), B::select(P("q"), Label::right, B::end())) ==
        XB::undefined());
  CHECK(merge(B::send(P("q"), ref("x"), B::end()), B::send(P("q"), lit(1), B::end())) == XB::undefined());
  CHECK(merge(B::cond(is_zero("x"), B::end(), B::end()), B::cond(BExpr::truth(true), B::end(), B::end())) ==
        XB::undefined());
  CHECK(merge(B::call(ProcRef{X("A"), P("p")}), B::call(ProcRef{X("A"), P("q")})) == XB::undefined());
  CHECK(merge(B::call(ProcRef{X("A"), P("p")}), B::call(ProcRef{X("A"), P("p")})) ==
        XB::call(ProcRef{X("A"), P("p")}));

  // Undefined is absorbing.
  for (const auto& b : space2()) {
    CHECK(xmerge(XB::undefined(), inject(b)) == XB::undefined());
    CHECK(xmerge(inject(b), XB::undefined()) == XB::undefined());
  }

  // The client's two branch behaviours when the server is not told.
  CHECK(merge(B::recv(P("s"), V("t"), B::end()), B::end()) == XB::undefined());
  CHECK(merge(B::send(P("c"), ref("token"), B::end()), B::end()) == XB::undefined());
}

TEST_CASE("merge conflicts point at the innermost mismatch") {
  XB l = inject(B::recv(P("ip"), V("x"), B::recv(P("s"), V("t"), B::end())));
  XB r = inject(B::recv(P("ip"), V("x"), B::end()));
  auto conflict = merge_conflict(l, r);
  REQUIRE(conflict);
  CHECK(conflict->first == inject(B::recv(P("s"), V("t"), B::end())));
  CHECK(conflict->second == XB::end());
  CHECK_FALSE(merge_conflict(l, l));
}

TEST_CASE("merge agrees with the reference on every pair") {
  std::size_t defined = 0;
  for (const auto& a : space3()) {
    for (const auto& b : space3()) {
      auto expected = ref_merge(a, b);
      XB got = merge(a, b);
      if (!(got == lifted(expected))) {
        FAIL_CHECK(to_string(a) << " with " << to_string(b) << ": " << to_string(got));
      }
      if (expected) ++defined;
      // A defined merge has no undefined parts.
      if (!got.is_undefined()) REQUIRE(collapse(got) == got);
      // Conflicts are reported exactly when the merge fails.
      CHECK(merge_conflict(inject(a), inject(b)).has_value() == got.is_undefined());
    }
  }
  CHECK(defined == 14583);
}

TEST_CASE("merge laws on the two-level space") {
  std::vector<XB> xs{XB::undefined()};
  for (const auto& b : space2()) xs.push_back(inject(b));
  for (const auto& a : xs) {
    CHECK(xmerge(a, a) == a);
    for (const auto& b : xs) {
      CHECK(xmerge(a, b) == xmerge(b, a));
      for (const auto& c : xs) CHECK(xmerge(xmerge(a, b), c) == xmerge(a, xmerge(b, c)));
    }
  }
}

TEST_CASE("merge inversion") {
  B send_a = B::send(P("q"), ref("x"), B::branch(P("q"), B::end(), std::nullopt));
  B send_b = B::send(P("q"), ref("x"), B::branch(P("q"), std::nullopt, B::end()));
  MergeInversion inv = merge_invert(send_a, send_b, HeadShape::send);
  CHECK(inv.result == B::send(P("q"), ref("x"), B::branch(P("q"), B::end(), B::end())));
  REQUIRE(inv.obligations.size() == 1);
  CHECK(inv.obligations[0].left == B::branch(P("q"), B::end(), std::nullopt));
  CHECK(inv.obligations[0].result == B::branch(P("q"), B::end(), B::end()));

  CHECK(merge_invert(B::end(), B::end(), HeadShape::end).obligations.empty());
  CHECK_THROWS_AS(merge_invert(B::end(), B::end(), HeadShape::send), NotInvertible);
  CHECK_THROWS_AS(merge_invert(B::end(), send_a, HeadShape::end), NotInvertible);

  // Each option of a merged branching comes from one side or both.
  B none = B::branch(P("p"), std::nullopt, std::nullopt);
  B left = B::branch(P("p"), B::end(), std::nullopt);
  MergeInversion from_left = merge_invert(left, none, HeadShape::branch);
  CHECK(from_left.options == std::array{OptionSource::from_left, OptionSource::absent});
  CHECK(merge_invert(none, left, HeadShape::branch).options ==
        std::array{OptionSource::from_right, OptionSource::absent});
  MergeInversion both = merge_invert(left, left, HeadShape::branch);
  CHECK(both.options == std::array{OptionSource::merged, OptionSource::absent});
  CHECK(both.obligations.size() == 1);

  // Every defined pair inverts at its result's head, and each obligation is
  // itself a defined merge.
  for (const auto& a : space2()) {
    for (const auto& b : space2()) {
      XB m = merge(a, b);
      if (m.is_undefined()) continue;
      MergeInversion i = merge_invert(a, b, head_shape(m));
      CHECK(inject(i.result) == m);
      CHECK(head_shape(a) == i.shape);
      CHECK(head_shape(b) == i.shape);
      for (const auto& o : i.obligations) CHECK(merge(o.left, o.right) == inject(o.result));
    }
  }
}

TEST_CASE("pruning examples") {
  CHECK(more_branches(B::branch(P("p"), B::end(), B::end()), B::branch(P("p"), std::nullopt, std::nullopt)));
  CHECK_FALSE(more_branches(B::branch(P("p"), std::nullopt, B::end()), B::branch(P("p"), B::end(), B::end())));
  CHECK_FALSE(more_branches(B::end(), B::branch(P("p"), std::nullopt, std::nullopt)));
  CHECK(xmore_branches(XB::undefined(), XB::undefined()));
  CHECK_FALSE(xmore_branches(XB::undefined(), XB::end()));
  CHECK_FALSE(xmore_branches(XB::end(), XB::undefined()));

  Network empty;
  CHECK_FALSE(net_more_branches(empty, net_update(Network{}, P("q"), B::branch(P("r"), B::end(), std::nullopt))));
  Network n = net_update(Network{}, P("q"), B::branch(P("r"), B::end(), B::end()));
  CHECK(net_more_branches(n, n));
  CHECK(net_more_branches(n, net_update(Network{}, P("q"), B::branch(P("r"), B::end(), std::nullopt))));
  CHECK_FALSE(net_more_branches(net_update(Network{}, P("q"), B::branch(P("r"), B::end(), std::nullopt)), n));
}

TEST_CASE("pruning agrees with explicit pruning sets") {
  std::size_t related = 0;
  for (const auto& a : space3()) {
    auto below = prunings(a);
    std::unordered_set<B> set(below.begin(), below.end());
    for (const auto& b : space3()) {
      bool expected = set.count(b) > 0;
      if (more_branches(a, b) != expected) FAIL_CHECK(to_string(a) << " vs " << to_string(b));
      CHECK(xmore_branches(inject(a), inject(b)) == expected);
      if (expected) ++related;
    }
  }
  CHECK(related == 5427);
}

TEST_CASE("pruning is a preorder") {
  for (const auto& a : space3()) {
    CHECK(more_branches(a, a));
    for (const auto& b : prunings(a)) {
      for (const auto& c : prunings(b)) CHECK(more_branches(a, c));
    }
  }
}

TEST_CASE("pruning and merging") {
  for (const auto& a : space2()) {
    for (const auto& b : space2()) {
      XB m = merge(a, b);
      CHECK(more_branches(a, b) == (m == inject(a)));
      if (auto mb = to_behaviour(m)) {
        CHECK(more_branches(*mb, a));
        CHECK(more_branches(*mb, b));
      }
    }
  }
}
