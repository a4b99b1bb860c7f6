#include "doctest.h"
#include "lnc/ast.hpp"

using namespace lnc;

namespace {

ExprPtr parse_one(const std::string& text) {
  Program p = parse_program(text);
  REQUIRE(p.statements.size() == 1);
  return p.statements[0];
}

PatternPtr pos_pat() {
  return pat_pos(pat_var("%src"), pat_var("%lbl"), pat_var("%tgt"));
}

}  // namespace

TEST_CASE("parse_program returns core trees only") {
  Program p = parse_program(
      "rules[-->]: premises must match P --((?op []))--> P' | "
      "P -/-((?op []))--> otherwise error \"bad\";;\n"
      "rules[-->]: distinctVars(premises.LTtargets) otherwise error \"dup\"");
  CHECK(p.statements.size() == 2);
  for (const auto& s : p.statements) CHECK(is_core(s));
}

TEST_CASE("rules selector desugars to a transition-conclusion select") {
  ExprPtr got = parse_one("rules[-->]: premises");
  ExprPtr want = ex_select(ex_rules(), pat_pos(pat_var("_"), pat_var("_"),
                                               pat_var("_")),
                           ex_premises());
  CHECK(expr_equal(got, want));
}

TEST_CASE("if without else gets a skip branch") {
  ExprPtr got = parse_one("if isVar(P) then skip");
  ExprPtr want = ex_if(bx_isvar(ex_patvar("P")), ex_skip(), ex_skip());
  CHECK(expr_equal(got, want));
}

TEST_CASE("sublistOf expands to a diff test") {
  ExprPtr got = parse_one("if not([P] sublistOf Xs) then error \"no\"");
  ExprPtr want =
      ex_if(bx_not(bx_eq(ex_diff(ex_list({ex_patvar("P")}), ex_patvar("Xs")),
                         ex_list({}))),
            ex_error("no"), ex_skip());
  CHECK(expr_equal(got, want));
}

TEST_CASE("must match expands to a residue test") {
  ExprPtr got = parse_one(
      "rules[-->]: premises must match P --(L)--> P' otherwise error \"bad\"");
  PatternPtr p = pat_pos(pat_var("P"), pat_var("L"), pat_var("P'"));
  ExprPtr residue =
      ex_diff(ex_premises(), ex_select(ex_premises(), p, ex_self()));
  ExprPtr want = ex_select(
      ex_rules(), pat_pos(pat_var("_"), pat_var("_"), pat_var("_")),
      ex_if(bx_not(bx_eq(residue, ex_list({}))), ex_error("bad"), ex_skip()));
  CHECK(expr_equal(got, want));
}

TEST_CASE("match-with expands to a singleton select test") {
  ExprPtr got = parse_one(
      "rules[-->]: match conclusion with P --(L)--> P' -> P "
      "otherwise error \"shape\"");
  PatternPtr p = pat_pos(pat_var("P"), pat_var("L"), pat_var("P'"));
  ExprPtr want = ex_select(
      ex_rules(), pat_pos(pat_var("_"), pat_var("_"), pat_var("_")),
      ex_if(bx_eq(ex_select(ex_list({ex_conclusion()}), p, ex_self()),
                  ex_list({})),
            ex_error("shape"), ex_patvar("P")));
  CHECK(expr_equal(got, want));
}

TEST_CASE("distinctVars expands to a uniquefy probe") {
  ExprPtr got = parse_one("distinctVars(Xs) otherwise error \"dup\"");
  ExprPtr want = ex_uniquefy(
      ex_list({ex_predlit("%distinct", ex_patvar("Xs"))}), "u", "%new", "%m",
      ex_if(bx_not(bx_eq(ex_patvar("%m"),
                         ex_maplit(ex_list({}), ex_list({})))),
            ex_error("dup"), ex_skip()));
  CHECK(expr_equal(got, want));
}

TEST_CASE("LT accessors expand to hygienic selects") {
  PatternPtr any = pat_pos(pat_var("_"), pat_var("_"), pat_var("_"));

  ExprPtr got = parse_one("rules[-->]: premises.LTtargets");
  ExprPtr want = ex_select(
      ex_rules(), any,
      ex_select(ex_premises(), pos_pat(), ex_patvar("%tgt")));
  CHECK(expr_equal(got, want));

  got = parse_one("rules[-->]: conclusion.LTsource");
  want = ex_select(ex_rules(), any,
                   ex_head(ex_select(ex_list({ex_conclusion()}), pos_pat(),
                                     ex_patvar("%src"))));
  CHECK(expr_equal(got, want));
}

TEST_CASE("expand_macros is idempotent on core trees") {
  Program p = parse_program(
      "rules[-->]: if not(getVars(conclusion.LTtarget) sublistOf "
      "(getVars(conclusion.LTsource) @ premises.LTtargets)) then error \"x\"");
  CHECK(expr_equal(p.statements[0], expand_macros(p.statements[0])));
}

TEST_CASE("percent is not an identifier character") {
  CHECK_THROWS_AS(parse_program("%m"), ParseError);
}

TEST_CASE("at and minus are left-associative list operators") {
  ExprPtr got = parse_one("Xs @ Ys - Zs");
  ExprPtr want = ex_diff(ex_append(ex_patvar("Xs"), ex_patvar("Ys")),
                         ex_patvar("Zs"));
  CHECK(expr_equal(got, want));
}

TEST_CASE("parenthesized term literal vs map literal") {
  ExprPtr tl = parse_one("(par P1 P2)");
  CHECK(tl->kind == Expr::Kind::TermLit);
  CHECK(tl->term.op == "par");

  ExprPtr ml = parse_one("([P] => [P'])");
  CHECK(ml->kind == Expr::Kind::MapLit);
}

TEST_CASE("statement separator requires ;;") {
  CHECK_THROWS_AS(parse_program("skip; skip"), ParseError);
  Program p = parse_program("skip;;\nskip");
  CHECK(p.statements.size() == 2);
}

TEST_CASE("the bundled validator shape parses from source text") {
  // a statement with every construct the validator needs
  ExprPtr got = parse_one(
      "rules[-->]: match conclusion with (?op1 Ps) --((?op2 []))--> P' -> "
      "Ps[P]: if not(isVar(P)) then error \"a\" otherwise error \"b\"");
  CHECK(is_core(got));
  CHECK(got->kind == Expr::Kind::Select);
}
