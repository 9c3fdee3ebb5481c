#include "doctest.h"
#include "testkit.hpp"

#include "chorc/merge.hpp"
#include "chorc/syntax.hpp"

using namespace chorc;
using namespace testkit;
using B = Behaviour;
using C = Choreography;

TEST_CASE("parsing the authentication program") {
  SourceUnit unit = parse_program(read_file(corpus_path("auth")), "auth.chor");
  CHECK(unit.program.main == auth_main());
  CHECK(unit.program.procs.entries().empty());
  CHECK(unit.path == "auth.chor");
  REQUIRE(unit.spans.count("main"));
  CHECK(unit.spans.at("main").begin == SourcePos{4, 3});
  CHECK(unit.spans.at("main/next").begin == SourcePos{5, 3});
  CHECK(unit.spans.count("main/next/then/next/next/next"));
}

TEST_CASE("small programs") {
  CHECK(parse_program("main { end }").program.main == C::end());
  CCProgram self = parse_program("main { p.1 -> p.x; end }").program;
  auto wf = cc_check_wf(self);
  REQUIRE(wf.violations.size() == 1);
  CHECK(wf.violations[0].restriction == 1);

  CCProgram ft = parse_program("def T(c, s) { s.f -> c.x; call T }\nmain { call T }").program;
  REQUIRE(ft.procs.find(X("T")));
  CHECK(ft.procs.vars_of(X("T")) == std::vector<Pid>{P("c"), P("s")});
}

TEST_CASE("expressions") {
  CHECK(parse_expr("1 + 2 * x") ==
        Expr::binary(ArithOp::add, lit(1), Expr::binary(ArithOp::mul, lit(2), ref("x"))));
  CHECK(parse_expr("1 - 2 - 3") ==
        Expr::binary(ArithOp::sub, Expr::binary(ArithOp::sub, lit(1), lit(2)), lit(3)));
  CHECK(parse_expr("(1 - 2) * 3") ==
        Expr::binary(ArithOp::mul, Expr::binary(ArithOp::sub, lit(1), lit(2)), lit(3)));
  CHECK(parse_expr("-5") == lit(-5));
  CHECK(parse_expr("-9223372036854775808") == lit(std::numeric_limits<Value>::min()));
  CHECK_THROWS_AS(parse_expr("9223372036854775808"), SyntaxError);
  CHECK(parse_bexpr("!x == 0 && true") ==
        BExpr::conj(BExpr::negate(is_zero("x")), BExpr::truth(true)));
  CHECK(parse_bexpr("(x < 1)") == BExpr::compare(CmpOp::lt, ref("x"), lit(1)));
  CHECK(parse_bexpr("(x) <= (1)") == BExpr::compare(CmpOp::le, ref("x"), lit(1)));
  for (const char* text : {"x + 1 * (y - 2)", "-3 - x", "x * -1", "((x))"}) {
    Expr e = parse_expr(text);
    CHECK(parse_expr(to_string(e)) == e);
  }
}

TEST_CASE("syntax errors carry positions") {
  auto error_at = [](const char* text) {
    try {
      parse_program(text);
    } catch (const SyntaxError& e) {
      return e.pos();
    }
    FAIL("no error");
    return SourcePos{};
  };
  CHECK(error_at("main { p.1 -> q.x end }") == SourcePos{1, 19});
  CHECK(error_at("main {\n  p -> q[up];\n  end\n}") == SourcePos{2, 10});
  CHECK(error_at("main { end } extra") == SourcePos{1, 14});
  CHECK(error_at("// nothing") == SourcePos{1, 11});
  CHECK(error_at("main { rt_call X [p] { end } }") == SourcePos{1, 16});
  try {
    parse_program("main { if p then { end } else { end } }");
    FAIL("accepted");
  } catch (const SyntaxError& e) {
    CHECK(std::string(e.what()).rfind("1:", 0) == 0);
  }
}

TEST_CASE("program printing round-trips") {
  for (const auto& name : good_corpus()) {
    CAPTURE(name);
    CCProgram p = corpus(name);
    std::string printed = print_program(p);
    CHECK(parse_program(printed).program == p);
    CHECK(print_program(parse_program(printed).program) == printed);
  }
  CCProgram broken = corpus("auth_noselect");
  CHECK(parse_program(print_program(broken)).program == broken);
}

TEST_CASE("behaviour printing") {
  CHECK(to_string(auth_bc()) == "ip!credentials; ip & { left: s?t; end, right: end }");
  CHECK(to_string(auth_bs()) == "ip & { left: c!token; end, right: end }");
  CHECK(to_string(B::branch(P("p"), std::nullopt, B::end())) == "p & { right: end }");
  CHECK(to_string(B::branch(P("p"), std::nullopt, std::nullopt)) == "p & { }");
  CHECK(to_string(B::call(ProcRef{X("T"), P("c")})) == "call T@c");
  CHECK(parse_behaviour("end") == B::end());
  CHECK(to_string(B::end()) == "end");
  CHECK(parse_behaviour(to_string(auth_bip())) == auth_bip());
  CHECK(parse_xbehaviour("p!x; undefined") == XBehaviour::send(P("p"), ref("x"), XBehaviour::undefined()));
  CHECK_THROWS_AS(parse_behaviour("p!x; undefined"), SyntaxError);
  CHECK_THROWS_AS(parse_behaviour("p & { left: end, left: end }"), SyntaxError);
}

TEST_CASE("behaviour round-trip on enumerated terms") {
  auto terms = small_behaviours(3);
  std::mt19937_64 gen(7);
  std::shuffle(terms.begin(), terms.end(), gen);
  terms.erase(terms.begin() + 1000, terms.end());
  terms.push_back(B::call(ProcRef{X("Loop"), P("q")}));
  terms.push_back(B::send(P("q"), Expr::binary(ArithOp::sub, lit(-1), lit(-2)), B::end()));
  for (const auto& b : terms) {
    std::string text = to_string(b);
    B back = parse_behaviour(text);
    CHECK(back == b);
    CHECK(to_string(back) == text);
    CHECK(parse_xbehaviour(text) == inject(b));
  }
}

TEST_CASE("process files") {
  SpEntries entries{{"c", auth_bc()}, {"T@c", B::call(ProcRef{X("T"), P("c")})}};
  std::string text = print_sp_file(entries);
  CHECK(text.rfind("format: 1\n", 0) == 0);
  CHECK(parse_sp_file(text) == entries);
  SPProgram sp = sp_program_from_entries(entries);
  CHECK(sp.net.at(P("c")) == auth_bc());
  CHECK(sp.procs.at(ProcRef{X("T"), P("c")}) == B::call(ProcRef{X("T"), P("c")}));

  CHECK_THROWS_AS(parse_sp_file("c = end\n"), SyntaxError);
  CHECK_THROWS_AS(parse_sp_file("format: 2\nc = end\n"), SyntaxError);
  CHECK_THROWS_AS(parse_sp_file("format: 1\nc = end\nc = end\n"), SyntaxError);
  CHECK(parse_sp_file("format: 1\n// comment\n\nc = end\n").size() == 1);
}
