#pragma once

#include "chorc/behaviour.hpp"
#include "chorc/sp.hpp"

namespace chorc {

/// `more_branches(b, pruned)`: `pruned` is `b` with zero or more branch
/// options removed, at any depth. Decided by structural recursion.
bool more_branches(const Behaviour& b, const Behaviour& pruned);

/// The same relation on extended behaviours; `undefined` relates only to
/// `undefined`.
bool xmore_branches(const XBehaviour& b, const XBehaviour& pruned);

/// Pointwise lifting to networks (written N >> N').
bool net_more_branches(const Network& n, const Network& pruned);

}  // namespace chorc
