#ifndef LNC_EVAL_HPP
#define LNC_EVAL_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lnc/ast.hpp"
#include "lnc/sos.hpp"

// Evaluator for core (post-desugaring) DSL expressions against a
// LanguageDef.

namespace lnc {

struct Value {
  enum class Kind { Term, Str, List, Map, Rule, Formula, Unit };
  Kind kind = Kind::Unit;
  Term term;
  std::string str;
  std::vector<Value> list;
  std::vector<std::pair<Value, Value>> map;  // keys pairwise distinct
  Formula formula;
  Rule rule;

  static Value unit();
  static Value of_term(Term t);
  static Value of_str(std::string s);
  static Value of_list(std::vector<Value> vs);
  static Value of_map(std::vector<std::pair<Value, Value>> m);
  static Value of_rule(Rule r);
  static Value of_formula(Formula f);
  bool operator==(const Value&) const = default;
};

std::string render_value(const Value& v);

// Thrown by `error` (UserError) and by runtime faults (head of empty list,
// unbound variable, map-key miss, type mismatch).
struct EvalError {
  enum class Kind { UserError, RuntimeFault };
  Kind kind = Kind::RuntimeFault;
  std::string message;
  // The rule selected when the error fired, if any (1-based file order).
  std::optional<int> rule_index;
  std::optional<Rule> rule;
};

class Evaluator {
 public:
  explicit Evaluator(LanguageDef lang) : lang_(std::move(lang)) {}

  // Statements run in order, each with a fresh environment; the result is
  // the last statement's value. The first EvalError aborts the program.
  Value run(const Program& prog);

  Value eval(const ExprPtr& e);
  bool eval_bool(const BoolExprPtr& b);

  // Tries p against v; on success commits the pattern's bindings to the
  // environment (shadowing any previous binding of the same name) and
  // returns true. Repeated variables within one pattern must match equal
  // values. RuleV elements match formula patterns via their conclusion.
  bool match_pattern(const PatternPtr& p, const Value& v);

  void bind(const std::string& name, Value v);
  const Value* lookup(const std::string& name) const;
  void reset();  // clears bindings and selection stacks

 private:
  Value eval_select(const Expr& e);
  Value eval_term_lit(const Term& t);
  bool match_args(const std::vector<PatternPtr>& pats,
                  const std::vector<Term>& args,
                  std::map<std::string, Value>& out);
  bool match_into(const PatternPtr& p, const Value& v,
                  std::map<std::string, Value>& out);

  struct RuleCtx {
    Rule rule;
    int index;  // 1-based position in lang_.rules
  };
  LanguageDef lang_;
  std::map<std::string, Value> env_;
  std::vector<Value> self_stack_;
  std::vector<RuleCtx> rule_stack_;
};

// List difference: elements of `a`, in order, with every element
// structurally equal to any element of `b` removed (all occurrences).
std::vector<Value> list_diff(const std::vector<Value>& a,
                             const std::vector<Value>& b);

// Metavariables used in a term/formula/rule value or a list thereof,
// pre-order left-to-right. Duplicates are preserved: Part 4 of the GSOS
// validator detects duplicated conclusion arguments through getVars.
std::vector<Value> get_vars(const Value& v);

struct UniquefyResult {
  std::vector<Formula> formulas;
  // original metavar -> replacements in occurrence order
  std::vector<std::pair<Value, Value>> changes;
};

// Renames every occurrence of a metavariable that occurs more than once
// across the formulae; fresh names never collide with metavariables already
// present in the input. The hint string does not affect the naming scheme.
UniquefyResult uniquefy_formulas(const std::vector<Formula>& formulas,
                                 const std::string& hint);

}  // namespace lnc

#endif
