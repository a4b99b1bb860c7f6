#include <fstream>
#include <sstream>

#include "doctest.h"
#include "lnc/eval.hpp"

using namespace lnc;

namespace {

LanguageDef tiny() {
  return parse_language(
      "Process P ::= (nil) | (a P) | (par P P)\n"
      "(a P) --(a)--> P.\n"
      "(par P1 P2) --(a)--> (par P1' P2) <== P1 --(a)--> P1'.\n"
      "(par P1 P2) --(a)--> P1 <== P2 -/-(a)-->.\n");
}

Value eval_one(const LanguageDef& lang, const std::string& text) {
  Evaluator ev(lang);
  return ev.run(parse_program(text));
}

Term var(const std::string& root, const std::string& suffix = "") {
  return Term::mk_var({root, suffix});
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("rules evaluates to the rule list in file order") {
  LanguageDef lang = tiny();
  Evaluator ev(lang);
  Value v = ev.run(parse_program("rules"));
  REQUIRE(v.kind == Value::Kind::List);
  CHECK(v.list.size() == 3);
  CHECK(v.list[0].kind == Value::Kind::Rule);
}

TEST_CASE("rule selector iterates matching rules and exposes premises") {
  Value v = eval_one(tiny(), "rules[-->]: premises");
  REQUIRE(v.kind == Value::Kind::List);
  REQUIRE(v.list.size() == 3);
  CHECK(v.list[0].list.empty());
  REQUIRE(v.list[1].list.size() == 1);
  CHECK(v.list[1].list[0] ==
        Value::of_formula(Formula::pos(var("P", "1"), Term::mk_app("a"),
                                       var("P", "1'"))));
  CHECK(v.list[2].list[0] ==
        Value::of_formula(Formula::neg(var("P", "2"), Term::mk_app("a"))));
}

TEST_CASE("select filters by pattern and negative premises are skipped") {
  Value v =
      eval_one(tiny(), "rules[-->]: premises[P --(L)--> P']: P");
  REQUIRE(v.list.size() == 3);
  CHECK(v.list[1].list == std::vector<Value>{Value::of_term(var("P", "1"))});
  CHECK(v.list[2].list.empty());
}

TEST_CASE("selector bindings leak into the following expression") {
  Value v = eval_one(
      tiny(), "rules[(?op Ps) --(L)--> T]: if [] = [] then Ps else Ps");
  REQUIRE(v.list.size() == 3);
  // first rule: (a P) --(a)--> P, so Ps = [P]
  CHECK(v.list[0] == Value::of_list({Value::of_term(var("P"))}));
}

TEST_CASE("list operations") {
  LanguageDef lang = parse_language("Process P ::= (nil)\nP --(a)--> P.\n");
  Value a = Value::of_str("a"), b = Value::of_str("b");
  CHECK(eval_one(lang, "[\"a\", \"b\", \"a\"] - [\"a\"]") ==
        Value::of_list({b}));
  CHECK(eval_one(lang, "[\"a\"] @ [\"b\"]") == Value::of_list({a, b}));
  CHECK(eval_one(lang, "head([\"a\", \"b\"])") == a);
  CHECK(eval_one(lang, "tail([\"a\", \"b\"])") == Value::of_list({b}));
}

TEST_CASE("head of empty list is a runtime fault") {
  LanguageDef lang = parse_language("Process P ::= (nil)\nP --(a)--> P.\n");
  Evaluator ev(lang);
  try {
    ev.run(parse_program("head([])"));
    FAIL("expected EvalError");
  } catch (const EvalError& e) {
    CHECK(e.kind == EvalError::Kind::RuntimeFault);
  }
}

TEST_CASE("error aborts with the user message and rule context") {
  LanguageDef lang = tiny();
  Evaluator ev(lang);
  try {
    ev.run(parse_program("rules[-->]: premises[P -/-(L)-->]: error \"neg\""));
    FAIL("expected EvalError");
  } catch (const EvalError& e) {
    CHECK(e.kind == EvalError::Kind::UserError);
    CHECK(e.message == "neg");
    REQUIRE(e.rule_index.has_value());
    CHECK(*e.rule_index == 3);  // the only rule with a negative premise
  }
}

TEST_CASE("maps pair keys with values positionally") {
  LanguageDef lang = parse_language("Process P ::= (nil)\nP --(a)--> P.\n");
  Value m = eval_one(lang, "([\"x\", \"y\"] => [\"1\", \"2\"])");
  REQUIRE(m.kind == Value::Kind::Map);
  REQUIRE(m.map.size() == 2);
  CHECK(eval_one(lang, "([\"x\", \"y\"] => [\"1\", \"2\"])(\"y\")") ==
        Value::of_str("2"));
}

TEST_CASE("getVars lists occurrences in order with duplicates") {
  LanguageDef lang =
      parse_language("Process P ::= (nil)\n(par P P) --(a)--> P1.\n");
  Value v = eval_one(lang, "rules[-->]: getVars(conclusion.LTsource)");
  REQUIRE(v.list.size() == 1);
  CHECK(v.list[0] == Value::of_list({Value::of_term(var("P")),
                                     Value::of_term(var("P"))}));
}

TEST_CASE("uniquefy renames repeated metavariables apart") {
  std::vector<Formula> fs = {
      Formula::pos(var("P"), Term::mk_app("a"), var("P")),
  };
  UniquefyResult r = uniquefy_formulas(fs, "u");
  REQUIRE(r.changes.size() == 1);
  CHECK(r.changes[0].first == Value::of_term(var("P")));
  auto reps = r.changes[0].second;
  REQUIRE(reps.kind == Value::Kind::List);
  REQUIRE(reps.list.size() == 2);
  CHECK(reps.list[0].term != reps.list[1].term);
  // fresh names avoid existing metavariables
  std::vector<Formula> fs2 = {Formula::mk_pred("d", {var("P"), var("P", "1"),
                                                     var("P")})};
  UniquefyResult r2 = uniquefy_formulas(fs2, "u");
  auto reps2 = r2.changes[0].second;
  REQUIRE(reps2.list.size() == 2);
  CHECK(reps2.list[0].term != var("P", "1"));
  CHECK(reps2.list[1].term != var("P", "1"));
  // all-distinct input is untouched
  std::vector<Formula> fs3 = {Formula::mk_pred("d", {var("P"), var("Q")})};
  UniquefyResult r3 = uniquefy_formulas(fs3, "u");
  CHECK(r3.changes.empty());
  CHECK(r3.formulas == fs3);
}

TEST_CASE("uniquefy expression binds the renamed list and the changes map") {
  LanguageDef lang =
      parse_language("Process P ::= (nil)\n(par P P) --(a)--> P.\n");
  Value v = eval_one(
      lang, "rules[-->]: uniquefy([conclusion], \"u\", New, M): M");
  REQUIRE(v.list.size() == 1);
  const Value& m = v.list[0];
  REQUIRE(m.kind == Value::Kind::Map);
  REQUIRE(m.map.size() == 1);
  CHECK(m.map[0].first == Value::of_term(var("P")));
  CHECK(m.map[0].second.list.size() == 3);  // P occurs three times
}

TEST_CASE("match_pattern destructures an application conclusion") {
  LanguageDef lang =
      parse_language("Process P ::= (nil)\n(par P1 P2) --(a)--> P1.\n");
  Evaluator ev(lang);
  PatternPtr p = pat_pos(pat_any_head("op1", {pat_var("Ps")}),
                         pat_any_head("op2", {pat_list({})}), pat_var("P'"));
  REQUIRE(ev.match_pattern(p, Value::of_formula(lang.rules[0].conclusion)));
  const Value* ps = ev.lookup("Ps");
  REQUIRE(ps != nullptr);
  CHECK(*ps == Value::of_list({Value::of_term(var("P", "1")),
                               Value::of_term(var("P", "2"))}));
  CHECK(ev.lookup("op1")->str == "par");
  CHECK(ev.lookup("op2")->str == "a");
}

TEST_CASE("repeated pattern variables require equal values") {
  LanguageDef lang = parse_language("Process P ::= (nil)\nP --(a)--> P.\n");
  Evaluator ev(lang);
  Value same = Value::of_list({Value::of_term(var("P")),
                               Value::of_term(var("P"))});
  Value diff = Value::of_list({Value::of_term(var("P")),
                               Value::of_term(var("Q"))});
  PatternPtr p = pat_list({pat_var("X"), pat_var("X")});
  CHECK(ev.match_pattern(p, same));
  CHECK_FALSE(ev.match_pattern(p, diff));
  // wildcards never bind and never constrain
  PatternPtr w = pat_list({pat_var("_"), pat_var("_")});
  CHECK(ev.match_pattern(w, diff));
  CHECK(ev.lookup("_") == nullptr);
}

TEST_CASE("statements run with fresh environments") {
  LanguageDef lang = parse_language("Process P ::= (nil)\nP --(a)--> P.\n");
  Evaluator ev(lang);
  try {
    ev.run(parse_program("rules[X --(L)--> Y]: skip;;\nX"));
    FAIL("expected EvalError for unbound X");
  } catch (const EvalError& e) {
    CHECK(e.kind == EvalError::Kind::RuntimeFault);
  }
}

TEST_CASE("the sequence fixture has fifteen rules") {
  LanguageDef lang = parse_language(
      slurp(std::string(LNC_CORPUS_DIR) + "/positive/sequence.sos"));
  CHECK(lang.rules.size() == 15);
}
