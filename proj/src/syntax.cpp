#include "chorc/syntax.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <limits>
#include <optional>
#include <set>

namespace chorc {

SyntaxError::SyntaxError(SourcePos pos, const std::string& message)
    : std::runtime_error(std::to_string(pos.line) + ":" + std::to_string(pos.col) + ": " + message),
      pos_(pos),
      message_(message) {}

namespace {

enum class Tok { ident, integer, symbol, eof };

struct Token {
  Tok kind;
  std::string text;
  SourcePos begin;
  SourcePos end;
};

const std::set<std::string, std::less<>> kKeywords = {"main", "def",  "if",    "then", "else", "call",
                                                      "end",  "true", "false", "left", "right"};

// Longest symbols first so that `->`, `(+)`, `&&`, `==` and `<=` win.
constexpr std::array<std::string_view, 24> kSymbols = {"(+)", "->", "&&", "==", "<=", "<", "!", "&",
                                                       "?",   "@",  "{",  "}",  "(",  ")", "[", "]",
                                                       ";",   ",",  ".",  ":",  "+",  "-", "*", "="};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  SourcePos pos;
  std::size_t i = 0;
  auto bump = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++pos.line;
        pos.col = 1;
      } else {
        ++pos.col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      bump(1);
      continue;
    }
    if (src.substr(i, 2) == "//") {
      while (i < src.size() && src[i] != '\n') bump(1);
      continue;
    }
    SourcePos begin = pos;
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t n = 1;
      while (i + n < src.size() && (std::isalnum(static_cast<unsigned char>(src[i + n])) || src[i + n] == '_')) ++n;
      bump(n);
      out.push_back({Tok::ident, std::string(src.substr(start, n)), begin, pos});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t n = 1;
      while (i + n < src.size() && std::isdigit(static_cast<unsigned char>(src[i + n]))) ++n;
      bump(n);
      out.push_back({Tok::integer, std::string(src.substr(start, n)), begin, pos});
      continue;
    }
    bool matched = false;
    for (auto sym : kSymbols) {
      if (src.substr(i, sym.size()) == sym) {
        bump(sym.size());
        out.push_back({Tok::symbol, std::string(sym), begin, pos});
        matched = true;
        break;
      }
    }
    if (!matched) throw SyntaxError(begin, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::eof, "", pos, pos});
  return out;
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::eof: return "end of input";
    case Tok::integer: return "integer " + t.text;
    case Tok::ident: return "'" + t.text + "'";
    case Tok::symbol: return "'" + t.text + "'";
  }
  return "?";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  // Expressions.

  Expr expr() {
    Expr lhs = term();
    while (peek("+") || peek("-")) {
      ArithOp op = next().text == "+" ? ArithOp::add : ArithOp::sub;
      lhs = Expr::binary(op, lhs, term());
    }
    return lhs;
  }

  BExpr bexpr() {
    BExpr lhs = unary();
    while (accept("&&")) lhs = BExpr::conj(lhs, unary());
    return lhs;
  }

  // Choreographies.

  Choreography chor(const AstPath& path) {
    SourcePos begin = cur().begin;
    Choreography c = chor_node(path);
    spans_[path] = Span{begin, toks_[pos_ - 1].end};
    return c;
  }

  SourceUnit program(std::string path, std::string text) {
    DefSet defs;
    while (accept_keyword("def")) {
      const Token& at = cur();
      RecVar name(ident("procedure name"));
      if (defs.find(name)) throw SyntaxError(at.begin, "procedure " + name.str() + " is defined twice");
      expect("(");
      std::vector<Pid> vars{Pid(ident("process name"))};
      while (accept(",")) vars.emplace_back(ident("process name"));
      expect(")");
      expect("{");
      Choreography body = chor(name.str());
      expect("}");
      defs.define(name, std::move(vars), std::move(body));
    }
    expect_keyword("main");
    expect("{");
    Choreography main = chor("main");
    expect("}");
    expect_eof();
    return SourceUnit{std::move(path), std::move(text), CCProgram{defs, main}, std::move(spans_)};
  }

  // Behaviours.

  template <bool Extended>
  BasicBehaviour<Extended> behaviour() {
    using B = BasicBehaviour<Extended>;
    if (accept_keyword("end")) return B::end();
    if (accept_keyword("call")) {
      RecVar name(ident("procedure name"));
      expect("@");
      return B::call(ProcRef{name, Pid(ident("process name"))});
    }
    if (accept_keyword("if")) {
      BExpr guard = bexpr();
      expect_keyword("then");
      expect("{");
      B then_branch = behaviour<Extended>();
      expect("}");
      expect_keyword("else");
      expect("{");
      B else_branch = behaviour<Extended>();
      expect("}");
      return B::cond(guard, then_branch, else_branch);
    }
    if constexpr (Extended) {
      if (cur().kind == Tok::ident && cur().text == "undefined") {
        next();
        return B::undefined();
      }
    }
    Pid peer(ident("process name"));
    if (accept("!")) {
      Expr e = expr();
      expect(";");
      return B::send(peer, e, behaviour<Extended>());
    }
    if (accept("?")) {
      Var x(ident("variable name"));
      expect(";");
      return B::recv(peer, x, behaviour<Extended>());
    }
    if (accept("(+)")) {
      Label l = label();
      expect(";");
      return B::select(peer, l, behaviour<Extended>());
    }
    if (accept("&")) {
      expect("{");
      typename B::Option on_left, on_right;
      if (!peek("}")) {
        do {
          const Token& at = cur();
          Label l = label();
          auto& slot = l == Label::left ? on_left : on_right;
          if (slot) throw SyntaxError(at.begin, "option " + std::string(to_string(l)) + " given twice");
          expect(":");
          slot = behaviour<Extended>();
        } while (accept(","));
      }
      expect("}");
      return B::branch(peer, on_left, on_right);
    }
    throw error("'!', '?', '(+)' or '&'");
  }

  SpEntries sp_file() {
    if (cur().kind != Tok::ident || cur().text != "format") throw error("'format: 1' header");
    next();
    expect(":");
    const Token& version = cur();
    if (version.kind != Tok::integer || version.text != "1") {
      throw SyntaxError(version.begin, "unsupported format version " + version.text);
    }
    next();
    SpEntries out;
    std::set<std::string> names;
    while (cur().kind != Tok::eof) {
      const Token& at = cur();
      std::string name = ident("entry name");
      if (accept("@")) name += "@" + ident("process name");
      if (!names.insert(name).second) throw SyntaxError(at.begin, "entry " + name + " given twice");
      expect("=");
      out.emplace_back(std::move(name), behaviour<false>());
    }
    return out;
  }

  void expect_eof() {
    if (cur().kind != Tok::eof) throw error("end of input");
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  bool peek(std::string_view sym) const { return cur().kind == Tok::symbol && cur().text == sym; }
  bool peek_keyword(std::string_view kw) const { return cur().kind == Tok::ident && cur().text == kw; }

  bool accept(std::string_view sym) {
    if (!peek(sym)) return false;
    ++pos_;
    return true;
  }
  bool accept_keyword(std::string_view kw) {
    if (!peek_keyword(kw)) return false;
    ++pos_;
    return true;
  }

  SyntaxError error(const std::string& expected) const {
    return SyntaxError(cur().begin, "expected " + expected + ", found " + describe(cur()));
  }

  void expect(std::string_view sym) {
    if (!accept(sym)) throw error("'" + std::string(sym) + "'");
  }
  void expect_keyword(std::string_view kw) {
    if (!accept_keyword(kw)) throw error("'" + std::string(kw) + "'");
  }

  std::string ident(const std::string& what) {
    if (cur().kind != Tok::ident || kKeywords.count(cur().text)) throw error(what);
    return next().text;
  }

  Label label() {
    if (accept_keyword("left")) return Label::left;
    if (accept_keyword("right")) return Label::right;
    throw error("'left' or 'right'");
  }

  Value integer(bool negative) {
    const Token& t = cur();
    if (t.kind != Tok::integer) throw error("integer");
    std::uint64_t magnitude = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), magnitude);
    std::uint64_t limit = static_cast<std::uint64_t>(std::numeric_limits<Value>::max()) + (negative ? 1 : 0);
    if (ec != std::errc() || magnitude > limit) throw SyntaxError(t.begin, "integer literal out of range");
    next();
    return negative ? static_cast<Value>(0 - magnitude) : static_cast<Value>(magnitude);
  }

  Expr atom() {
    if (cur().kind == Tok::integer) return Expr::literal(integer(false));
    if (accept("-")) return Expr::literal(integer(true));
    if (accept("(")) {
      Expr e = expr();
      expect(")");
      return e;
    }
    return Expr::var(Var(ident("expression")));
  }

  Expr term() {
    Expr lhs = atom();
    while (accept("*")) lhs = Expr::binary(ArithOp::mul, lhs, atom());
    return lhs;
  }

  BExpr unary() {
    if (accept("!")) return BExpr::negate(unary());
    return primary();
  }

  BExpr primary() {
    if (accept_keyword("true")) return BExpr::truth(true);
    if (accept_keyword("false")) return BExpr::truth(false);
    if (peek("(")) {
      // Either a parenthesised condition or a comparison whose left operand
      // starts with a parenthesis.
      std::size_t save = pos_;
      std::optional<SyntaxError> first;
      try {
        next();
        BExpr b = bexpr();
        expect(")");
        if (!peek("==") && !peek("<=") && !peek("<") && !peek("+") && !peek("-") && !peek("*")) return b;
      } catch (const SyntaxError& e) {
        first = e;
      }
      std::size_t reached = pos_;
      pos_ = save;
      try {
        return comparison();
      } catch (const SyntaxError&) {
        if (first && reached > pos_) throw *first;
        throw;
      }
    }
    return comparison();
  }

  BExpr comparison() {
    Expr lhs = expr();
    CmpOp op;
    if (accept("==")) {
      op = CmpOp::eq;
    } else if (accept("<=")) {
      op = CmpOp::le;
    } else if (accept("<")) {
      op = CmpOp::lt;
    } else {
      throw error("'==', '<=' or '<'");
    }
    return BExpr::compare(op, lhs, expr());
  }

  Choreography chor_node(const AstPath& path) {
    if (accept_keyword("end")) return Choreography::end();
    if (accept_keyword("call")) return Choreography::call(RecVar(ident("procedure name")));
    if (accept_keyword("if")) {
      Pid p(ident("process name"));
      expect(".");
      BExpr guard = bexpr();
      expect_keyword("then");
      expect("{");
      Choreography then_branch = chor(path + "/then");
      expect("}");
      expect_keyword("else");
      expect("{");
      Choreography else_branch = chor(path + "/else");
      expect("}");
      return Choreography::cond(p, guard, then_branch, else_branch);
    }
    Pid sender(ident("interaction, 'if', 'call' or 'end'"));
    std::optional<Eta> eta;
    if (accept(".")) {
      Expr e = expr();
      expect("->");
      Pid receiver(ident("process name"));
      expect(".");
      eta = Eta::com(sender, e, receiver, Var(ident("variable name")));
    } else if (accept("->")) {
      Pid receiver(ident("process name"));
      expect("[");
      Label l = label();
      expect("]");
      eta = Eta::sel(sender, receiver, l);
    } else {
      throw error("'.' or '->'");
    }
    expect(";");
    return Choreography::interaction(*eta, chor(path + "/next"));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::map<AstPath, Span> spans_;
};

void indent(std::string& out, int depth) { out.append(static_cast<std::size_t>(depth) * 2, ' '); }

void print_chor(const Choreography& c, int depth, std::string& out) {
  using CN = Choreography::Node;
  indent(out, depth);
  std::visit(overloaded{
                 [&](const CN::Interaction& x) {
                   std::visit(overloaded{
                                  [&](const Eta::Com& e) {
                                    out += e.sender.str() + "." + to_string(e.expr) + " -> " + e.receiver.str() + "." +
                                           e.target.str();
                                  },
                                  [&](const Eta::Sel& e) {
                                    out += e.sender.str() + " -> " + e.receiver.str() + "[" +
                                           std::string(to_string(e.label)) + "]";
                                  },
                              },
                              x.eta.v);
                   out += ";\n";
                   print_chor(x.cont, depth, out);
                 },
                 [&](const CN::Cond& x) {
                   out += "if " + x.pid.str() + "." + to_string(x.guard) + " then {\n";
                   print_chor(x.then_branch, depth + 1, out);
                   indent(out, depth);
                   out += "} else {\n";
                   print_chor(x.else_branch, depth + 1, out);
                   indent(out, depth);
                   out += "}\n";
                 },
                 [&](const CN::Call& x) { out += "call " + x.name.str() + "\n"; },
                 [&](const CN::RtCall& x) {
                   out += "rt_call " + x.name.str() + " [";
                   for (std::size_t i = 0; i < x.pending.size(); ++i) {
                     if (i) out += ", ";
                     out += x.pending[i].str();
                   }
                   out += "] {\n";
                   print_chor(x.body, depth + 1, out);
                   indent(out, depth);
                   out += "}\n";
                 },
                 [&](const CN::End&) { out += "end\n"; },
             },
             c.node().v);
}

}  // namespace

SourceUnit parse_program(std::string_view text, std::string path) {
  return Parser(text).program(std::move(path), std::string(text));
}

Expr parse_expr(std::string_view text) {
  Parser p(text);
  Expr e = p.expr();
  p.expect_eof();
  return e;
}

BExpr parse_bexpr(std::string_view text) {
  Parser p(text);
  BExpr b = p.bexpr();
  p.expect_eof();
  return b;
}

std::string print_choreography(const Choreography& c) {
  std::string out;
  print_chor(c, 0, out);
  return out;
}

std::string print_program(const CCProgram& p) {
  std::string out;
  for (const auto& [name, def] : p.procs.entries()) {
    out += "def " + name.str() + "(";
    for (std::size_t i = 0; i < def.vars.size(); ++i) {
      if (i) out += ", ";
      out += def.vars[i].str();
    }
    out += ") {\n";
    print_chor(def.body, 1, out);
    out += "}\n\n";
  }
  out += "main {\n";
  print_chor(p.main, 1, out);
  out += "}\n";
  return out;
}

Behaviour parse_behaviour(std::string_view text) {
  Parser p(text);
  Behaviour b = p.behaviour<false>();
  p.expect_eof();
  return b;
}

XBehaviour parse_xbehaviour(std::string_view text) {
  Parser p(text);
  XBehaviour b = p.behaviour<true>();
  p.expect_eof();
  return b;
}

std::string print_sp_file(const SpEntries& entries) {
  std::string out = "format: 1\n";
  for (const auto& [name, b] : entries) out += name + " = " + to_string(b) + "\n";
  return out;
}

SpEntries parse_sp_file(std::string_view text) { return Parser(text).sp_file(); }

SPProgram sp_program_from_entries(const SpEntries& entries) {
  SPProgram out;
  for (const auto& [name, b] : entries) {
    auto at = name.find('@');
    if (at == std::string::npos) {
      out.net.set(Pid(name), b);
    } else {
      out.procs.set(ProcRef{RecVar(name.substr(0, at)), Pid(name.substr(at + 1))}, b);
    }
  }
  return out;
}

}  // namespace chorc
