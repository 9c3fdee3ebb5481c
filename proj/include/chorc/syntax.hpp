#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chorc/behaviour.hpp"
#include "chorc/cc.hpp"
#include "chorc/sp.hpp"

namespace chorc {

struct SourcePos {
  std::size_t line = 1;  // 1-based
  std::size_t col = 1;   // 1-based
  friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

struct Span {
  SourcePos begin;
  SourcePos end;  // one past the last character
};

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(SourcePos pos, const std::string& message);
  SourcePos pos() const { return pos_; }
  const std::string& message() const { return message_; }

 private:
  SourcePos pos_;
  std::string message_;
};

/// A parsed `.chor` file. `spans` maps the AST path of every choreography
/// node (see AstPath) to its source range.
struct SourceUnit {
  std::string path;
  std::string text;
  CCProgram program;
  std::map<AstPath, Span> spans;
};

/// Parses a program:
///
///   program := def* "main" "{" chor "}"
///   def     := "def" X "(" p ("," p)* ")" "{" chor "}"
///   chor    := eta ";" chor | "if" p "." bexpr "then" "{" chor "}" "else" "{" chor "}"
///            | "call" X | "end"
///   eta     := p "." expr "->" q "." x | p "->" q "[" ("left" | "right") "]"
///
/// Line comments start with `//`. Runtime calls have no source form.
SourceUnit parse_program(std::string_view text, std::string path = "<input>");

Expr parse_expr(std::string_view text);
BExpr parse_bexpr(std::string_view text);

/// Source text that parses back to an equal program. Runtime calls print as
/// `rt_call X [p, q] { C }`, which is not parseable.
std::string print_program(const CCProgram& p);
std::string print_choreography(const Choreography& c);

/// Inverse of to_string on behaviours.
Behaviour parse_behaviour(std::string_view text);
XBehaviour parse_xbehaviour(std::string_view text);

/// `.sp` files: a `format: 1` header line, then one `NAME = behaviour` line
/// per entry, where NAME is a process or a procedure entry `X@p`.
using SpEntries = std::vector<std::pair<std::string, Behaviour>>;

std::string print_sp_file(const SpEntries& entries);
SpEntries parse_sp_file(std::string_view text);

/// Splits the entries of one or more `.sp` files into a program: `X@p`
/// names go to the procedures, plain names to the network.
SPProgram sp_program_from_entries(const SpEntries& entries);

}  // namespace chorc
