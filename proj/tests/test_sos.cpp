#include "doctest.h"
#include "lnc/sos.hpp"

using namespace lnc;

namespace {

const char* kTiny = R"(
Process P ::= (nil) | (a P) | (par P P)

(a P) --(a)--> P.
(par P1 P2) --(a)--> (par P1' P2) <== P1 --(a)--> P1'.
)";

}  // namespace

TEST_CASE("parses grammar declarations and rules") {
  LanguageDef lang = parse_language(kTiny);
  REQUIRE(lang.grammars.size() == 1);
  CHECK(lang.grammars[0].category == "Process");
  CHECK(lang.grammars[0].metavar_root == "P");
  CHECK(lang.grammars[0].productions.size() == 3);
  REQUIRE(lang.rules.size() == 2);
  CHECK(lang.rules[0].premises.empty());
  CHECK(lang.rules[0].conclusion ==
        Formula::pos(Term::mk_app("a", {Term::mk_var({"P", ""})}),
                     Term::mk_app("a"), Term::mk_var({"P", ""})));
  REQUIRE(lang.rules[1].premises.size() == 1);
  CHECK(lang.rules[1].premises[0] ==
        Formula::pos(Term::mk_var({"P", "1"}), Term::mk_app("a"),
                     Term::mk_var({"P", "1'"})));
}

TEST_CASE("metavariable classification uses longest declared root") {
  LanguageDef lang = parse_language(
      "Process P ::= (nil)\nLabel PL ::= (tau)\n(nil) --(PL)--> P.\n");
  const Rule& r = lang.rules[0];
  CHECK(r.conclusion.label() == Term::mk_var({"PL", ""}));
  CHECK(r.conclusion.target() == Term::mk_var({"P", ""}));
}

TEST_CASE("label position accepts metavars and bare constants") {
  LanguageDef lang =
      parse_language("Process P ::= (nil)\nLabel L ::= (a)\n"
                     "P --(L)--> P.\nP --(a)--> P.\nP --((a))--> P.\n");
  CHECK(lang.rules[0].conclusion.label() == Term::mk_var({"L", ""}));
  CHECK(lang.rules[1].conclusion.label() == Term::mk_app("a"));
  CHECK(lang.rules[2].conclusion.label() == Term::mk_app("a"));
}

TEST_CASE("negative premises and predicate premises parse") {
  LanguageDef lang = parse_language(
      "Process P ::= (nil)\n"
      "(a P) --(a)--> P <== P -/-(b)--> /\\ (done P).\n");
  REQUIRE(lang.rules[0].premises.size() == 2);
  CHECK(lang.rules[0].premises[0] ==
        Formula::neg(Term::mk_var({"P", ""}), Term::mk_app("b")));
  CHECK(lang.rules[0].premises[1] ==
        Formula::mk_pred("done", {Term::mk_var({"P", ""})}));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_language(""), ParseError);
  CHECK_THROWS_AS(parse_language("   // only a comment\n"), ParseError);
  // unbalanced parentheses
  CHECK_THROWS_AS(parse_language("Process P ::= (nil)\n(a P --(a)--> P.\n"),
                  ParseError);
  // missing terminating dot
  CHECK_THROWS_AS(parse_language("Process P ::= (nil)\n(a P) --(a)--> P\n"),
                  ParseError);
  // bare token that is not a declared metavariable root
  CHECK_THROWS_AS(parse_language("Process P ::= (nil)\nQ --(a)--> P.\n"),
                  ParseError);
  // negative transition used as a conclusion
  CHECK_THROWS_AS(parse_language("Process P ::= (nil)\nP -/-(a)-->.\n"),
                  ParseError);
  // duplicate metavariable root
  CHECK_THROWS_AS(
      parse_language("Process P ::= (nil)\nChannel P ::= (chan)\nP --(a)--> P.\n"),
      ParseError);
}

TEST_CASE("parse error carries position") {
  try {
    parse_language("Process P ::= (nil)\nQ --(a)--> P.\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.col >= 1);
  }
}

TEST_CASE("printer round-trips") {
  LanguageDef lang = parse_language(kTiny);
  LanguageDef again = parse_language(print_language(lang));
  CHECK(lang == again);
}

TEST_CASE("term_vars preserves order and duplicates") {
  LanguageDef lang =
      parse_language("Process P ::= (nil)\n(par P P) --(a)--> P1.\n");
  auto vs = term_vars(lang.rules[0].conclusion.source());
  REQUIRE(vs.size() == 2);
  CHECK(vs[0].name() == "P");
  CHECK(vs[1].name() == "P");
}

TEST_CASE("comments are ignored") {
  LanguageDef lang = parse_language(
      "// a language\nProcess P ::= (nil) | (a P) // trailing\n"
      "(a P) --(a)--> P.\n");
  CHECK(lang.rules.size() == 1);
}
