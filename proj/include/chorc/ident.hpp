#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "chorc/util.hpp"

namespace chorc {

/// True for `[a-zA-Z][a-zA-Z0-9_]*`.
bool is_identifier(std::string_view text);

/// An identifier tagged with the syntactic category it names. Construction
/// rejects anything that is not a lexically valid identifier.
template <class Tag>
class Name {
 public:
  explicit Name(std::string text) : text_(std::move(text)) {
    if (!is_identifier(text_)) {
      throw std::invalid_argument("invalid identifier '" + text_ + "'");
    }
  }

  const std::string& str() const { return text_; }

  friend bool operator==(const Name&, const Name&) = default;
  friend std::strong_ordering operator<=>(const Name&, const Name&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Name& n) {
    return os << n.text_;
  }

 private:
  std::string text_;
};

using Pid = Name<struct PidTag>;
using Var = Name<struct VarTag>;
using RecVar = Name<struct RecVarTag>;

/// Procedure names on the process side: each procedure exists once per
/// participating process.
struct ProcRef {
  RecVar name;
  Pid pid;

  friend bool operator==(const ProcRef&, const ProcRef&) = default;
  friend std::strong_ordering operator<=>(const ProcRef&, const ProcRef&) = default;
};

std::string to_string(const ProcRef& ref);

enum class Label { left, right };

std::string_view to_string(Label l);

}  // namespace chorc

template <class Tag>
struct std::hash<chorc::Name<Tag>> {
  std::size_t operator()(const chorc::Name<Tag>& n) const noexcept {
    return std::hash<std::string>{}(n.str());
  }
};

template <>
struct std::hash<chorc::ProcRef> {
  std::size_t operator()(const chorc::ProcRef& r) const noexcept {
    std::size_t seed = std::hash<chorc::RecVar>{}(r.name);
    chorc::hash_combine(seed, std::hash<chorc::Pid>{}(r.pid));
    return seed;
  }
};
