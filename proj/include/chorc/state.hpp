#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "chorc/ident.hpp"

namespace chorc {

using Value = std::int64_t;

/// Process-local memory of a whole system: (process, variable) -> value.
///
/// Every unset cell reads as 0. The store is kept canonical by never holding
/// an explicit 0 entry, so `==` on the representation is extensional
/// equality of the total functions.
class State {
 public:
  using Cell = std::pair<Pid, Var>;

  State() = default;

  Value get(const Pid& p, const Var& x) const;

  /// In-place write; writing 0 erases the cell.
  void set(const Pid& p, const Var& x, Value v);

  const std::map<Cell, Value>& cells() const { return cells_; }

  /// FNV-1a 64-bit over the canonical store: for each cell in order, the
  /// pid bytes, a 0 byte, the variable bytes, a 0 byte, then the value as
  /// 8 little-endian bytes.
  std::uint64_t digest() const;

  std::size_t hash() const;

  friend bool operator==(const State&, const State&) = default;

 private:
  std::map<Cell, Value> cells_;
};

State update_state(State s, const Pid& q, const Var& x, Value v);

std::string to_string(const State& s);
std::string digest_hex(std::uint64_t digest);

}  // namespace chorc
