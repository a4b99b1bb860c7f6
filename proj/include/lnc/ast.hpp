#ifndef LNC_AST_HPP
#define LNC_AST_HPP

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "lnc/sos.hpp"

// Abstract syntax, concrete-syntax parser, and macro desugaring for the
// Lang-n-Change DSL subset used by the GSOS validator.

namespace lnc {

struct Pattern;
struct Expr;
struct BoolExpr;
using PatternPtr = std::shared_ptr<const Pattern>;
using ExprPtr = std::shared_ptr<const Expr>;
using BoolExprPtr = std::shared_ptr<const BoolExpr>;

// Pattern variables named "_" are wildcards and never bind.
struct Pattern {
  enum class Kind {
    Var,      // x
    List,     // [p ... p]
    Op,       // (name p ... p): term with operator `name`, or predicate `name`
    AnyHead,  // (?x p ... p): any operator/predicate, head name bound to x
    Pos,      // p --(p)--> p
    Neg,      // p -/-(p)-->
  };
  Kind kind = Kind::Var;
  std::string name;  // Var name, Op opname, AnyHead head variable
  std::vector<PatternPtr> args;  // List elems; Op/AnyHead args;
                                 // Pos {src,lbl,tgt}; Neg {src,lbl}
};

PatternPtr pat_var(std::string name);
PatternPtr pat_list(std::vector<PatternPtr> elems);
PatternPtr pat_op(std::string name, std::vector<PatternPtr> args);
PatternPtr pat_any_head(std::string head, std::vector<PatternPtr> args);
PatternPtr pat_pos(PatternPtr src, PatternPtr lbl, PatternPtr tgt);
PatternPtr pat_neg(PatternPtr src, PatternPtr lbl);

struct BoolExpr {
  enum class Kind {
    Eq, IsVar, And, Or, Not,
    SublistOf,  // surface macro; expands to Eq(Diff(a,b), [])
  };
  Kind kind = Kind::Eq;
  ExprPtr a, b;      // Eq/SublistOf operands; IsVar uses a
  BoolExprPtr x, y;  // And/Or operands; Not uses x
};

struct Expr {
  enum class Kind {
    // core
    PatVar, StrLit,
    TermLit,   // term with embedded pattern variables
    PredLit,   // formula (name args...) where args is a list expression
    ListLit, Head, Tail, Append, Diff,
    MapLit,    // (keys => values), positional pairing
    MapGet,    // e(e)
    Rules, Premises, Conclusion, Self,
    Select,    // e[p]: e
    Uniquefy,  // uniquefy(e, "hint", x, m): e
    GetVars, If, Skip, Error,
    // surface only; removed by expand_macros
    MustMatch,     // e must match p | ... | p otherwise e
    MatchWith,     // match e with p -> e otherwise e
    DistinctVars,  // distinctVars(e) otherwise e
    Accessor,      // premises.LTsources etc., name in `str`
  };
  Kind kind = Kind::Skip;
  std::string str;   // StrLit, Error message, PredLit name, Uniquefy hint,
                     // Accessor name, PatVar name
  Term term;         // TermLit
  std::vector<ExprPtr> items;      // ListLit, PredLit args... (single list expr in a)
  ExprPtr a, b, c;   // operands: Select {a=source,b=body}; If {b=then,c=else};
                     // MapLit {a=keys,b=values}; Uniquefy {a=input,b=body};
                     // MatchWith {a=scrutinee,b=then,c=otherwise}
  BoolExprPtr cond;  // If condition
  PatternPtr pat;    // Select, MatchWith
  std::vector<PatternPtr> pats;  // MustMatch alternatives
  std::string name1, name2;      // Uniquefy bound names (formulae, changes map)
};

struct Program {
  std::vector<ExprPtr> statements;  // checks, executed in order
};

// Parses the surface syntax and returns the program with all macros and
// shorthands already expanded.
Program parse_program(std::string_view text);

// Purely syntactic; idempotent on core trees.
ExprPtr expand_macros(const ExprPtr& e);
BoolExprPtr expand_macros(const BoolExprPtr& b);

bool is_core(const ExprPtr& e);  // true iff no macro node remains

// Constructors used by the parser, the expander, and tests.
ExprPtr ex_patvar(std::string name);
ExprPtr ex_str(std::string s);
ExprPtr ex_termlit(Term t);
ExprPtr ex_predlit(std::string name, ExprPtr args);
ExprPtr ex_list(std::vector<ExprPtr> items);
ExprPtr ex_head(ExprPtr e);
ExprPtr ex_tail(ExprPtr e);
ExprPtr ex_append(ExprPtr a, ExprPtr b);
ExprPtr ex_diff(ExprPtr a, ExprPtr b);
ExprPtr ex_maplit(ExprPtr keys, ExprPtr values);
ExprPtr ex_mapget(ExprPtr m, ExprPtr k);
ExprPtr ex_rules();
ExprPtr ex_premises();
ExprPtr ex_conclusion();
ExprPtr ex_self();
ExprPtr ex_select(ExprPtr source, PatternPtr p, ExprPtr body);
ExprPtr ex_uniquefy(ExprPtr input, std::string hint, std::string new_var,
                    std::string map_var, ExprPtr body);
ExprPtr ex_getvars(ExprPtr e);
ExprPtr ex_if(BoolExprPtr cond, ExprPtr then_e, ExprPtr else_e);
ExprPtr ex_skip();
ExprPtr ex_error(std::string msg);

BoolExprPtr bx_eq(ExprPtr a, ExprPtr b);
BoolExprPtr bx_isvar(ExprPtr a);
BoolExprPtr bx_and(BoolExprPtr x, BoolExprPtr y);
BoolExprPtr bx_or(BoolExprPtr x, BoolExprPtr y);
BoolExprPtr bx_not(BoolExprPtr x);

// Structural equality over trees (used by tests).
bool expr_equal(const ExprPtr& a, const ExprPtr& b);
bool bool_equal(const BoolExprPtr& a, const BoolExprPtr& b);
bool pattern_equal(const PatternPtr& a, const PatternPtr& b);

}  // namespace lnc

#endif
