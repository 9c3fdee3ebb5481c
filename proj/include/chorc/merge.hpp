#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "chorc/behaviour.hpp"

namespace chorc {

XBehaviour inject(const Behaviour& b);

/// `undefined` if `b` has an `undefined` subterm, otherwise `b` itself.
XBehaviour collapse(const XBehaviour& b);

/// Inverse of inject on fully defined behaviours; nullopt if `b` contains
/// `undefined` anywhere.
std::optional<Behaviour> to_behaviour(const XBehaviour& b);

/// Merge of extended behaviours. Defined homomorphically on equal head
/// constructors with equal decorations; branchings on the same peer combine
/// their options (an option present on one side is kept, present on both is
/// merged). A recursive result of `undefined` makes the enclosing constructor
/// `undefined`; any mismatch is `undefined`; `undefined` is absorbing.
XBehaviour xmerge(const XBehaviour& a, const XBehaviour& b);

XBehaviour merge(const Behaviour& a, const Behaviour& b);

/// The innermost pair of operands at which `xmerge(a, b)` becomes undefined
/// because of a constructor or decoration mismatch (or an operand that was
/// already undefined). nullopt when the merge is defined.
std::optional<std::pair<XBehaviour, XBehaviour>> merge_conflict(const XBehaviour& a, const XBehaviour& b);

enum class OptionSource { absent, from_left, from_right, merged };

struct MergeObligation {
  Behaviour left;
  Behaviour right;
  Behaviour result;
};

/// Decomposition of a defined merge `merge(left, right)` whose result has a
/// given head. Both operands share that head and decorations; `obligations`
/// lists the residual sub-merges (continuation; both branches of a
/// conditional; merged branch options in left/right order). For branchings,
/// `options` tells where each option of the result comes from.
struct MergeInversion {
  HeadShape shape;
  Behaviour result;
  std::vector<MergeObligation> obligations;
  std::array<OptionSource, 2> options{OptionSource::absent, OptionSource::absent};
};

class NotInvertible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws NotInvertible if the merge is undefined or its head is not `query`.
MergeInversion merge_invert(const Behaviour& left, const Behaviour& right, HeadShape query);

}  // namespace chorc
