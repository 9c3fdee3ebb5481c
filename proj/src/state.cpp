#include "chorc/state.hpp"

#include <cstdio>

namespace chorc {

bool is_identifier(std::string_view text) {
  if (text.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(text.front())) return false;
  for (char c : text.substr(1)) {
    if (!alpha(c) && !digit(c) && c != '_') return false;
  }
  return true;
}

std::string to_string(const ProcRef& ref) { return ref.name.str() + "@" + ref.pid.str(); }

std::string_view to_string(Label l) { return l == Label::left ? "left" : "right"; }

Value State::get(const Pid& p, const Var& x) const {
  auto it = cells_.find(Cell{p, x});
  return it == cells_.end() ? 0 : it->second;
}

void State::set(const Pid& p, const Var& x, Value v) {
  if (v == 0) {
    cells_.erase(Cell{p, x});
  } else {
    cells_.insert_or_assign(Cell{p, x}, v);
  }
}

std::uint64_t State::digest() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](unsigned char byte) {
    h ^= byte;
    h *= 0x100000001b3ULL;
  };
  for (const auto& [cell, value] : cells_) {
    for (char c : cell.first.str()) feed(static_cast<unsigned char>(c));
    feed(0);
    for (char c : cell.second.str()) feed(static_cast<unsigned char>(c));
    feed(0);
    auto bits = static_cast<std::uint64_t>(value);
    for (int i = 0; i < 8; ++i) feed(static_cast<unsigned char>((bits >> (8 * i)) & 0xff));
  }
  return h;
}

std::size_t State::hash() const { return static_cast<std::size_t>(digest()); }

State update_state(State s, const Pid& q, const Var& x, Value v) {
  s.set(q, x, v);
  return s;
}

std::string to_string(const State& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [cell, value] : s.cells()) {
    if (!first) out += ", ";
    first = false;
    out += cell.first.str() + "." + cell.second.str() + "=" + std::to_string(value);
  }
  return out + "}";
}

std::string digest_hex(std::uint64_t digest) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(digest));
  return buf;
}

}  // namespace chorc
