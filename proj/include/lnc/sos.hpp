#ifndef LNC_SOS_HPP
#define LNC_SOS_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// Data model for textual SOS language definitions: grammars plus
// labeled-transition inference rules.

namespace lnc {

struct MetaVar {
  std::string root;    // declared by a grammar production header, e.g. "P"
  std::string suffix;  // digits and primes, e.g. "1'"

  std::string name() const { return root + suffix; }
  // The rendered form is the identity: root and suffix splits may differ
  // between a parsed metavariable and a uniquefy-generated one.
  bool operator==(const MetaVar& o) const { return name() == o.name(); }
  bool operator<(const MetaVar& o) const {
    return name() < o.name();
  }
};

// A term is either a metavariable or an operator applied to terms.
// An application with no arguments is a constant, e.g. the label (a).
struct Term {
  enum class Kind { Var, App };
  Kind kind = Kind::App;
  MetaVar var;             // Kind::Var
  std::string op;          // Kind::App
  std::vector<Term> args;  // Kind::App

  static Term mk_var(MetaVar v);
  static Term mk_app(std::string op, std::vector<Term> args = {});
  bool is_var() const { return kind == Kind::Var; }
  // constant = operator applied to an empty argument list
  bool is_constant() const { return kind == Kind::App && args.empty(); }
  bool operator==(const Term&) const = default;
};

// Positive transition  P --(a)--> P'
// Negative transition  P -/-(a)-->
// Generic predicate    (predname arg1 ... argn)
struct Formula {
  enum class Kind { Pos, Neg, Pred };
  Kind kind = Kind::Pred;
  std::string pred;        // Kind::Pred
  std::vector<Term> args;  // Pos: {source,label,target}; Neg: {source,label}

  static Formula pos(Term source, Term label, Term target);
  static Formula neg(Term source, Term label);
  static Formula mk_pred(std::string name, std::vector<Term> args);

  const Term& source() const { return args[0]; }
  const Term& label() const { return args[1]; }
  const Term& target() const { return args[2]; }
  bool operator==(const Formula&) const = default;
};

struct Rule {
  std::vector<Formula> premises;
  Formula conclusion;
  bool operator==(const Rule&) const = default;
};

struct GrammarDecl {
  std::string category;      // e.g. "Process"
  std::string metavar_root;  // e.g. "P"
  std::vector<Term> productions;
  bool operator==(const GrammarDecl&) const = default;
};

struct LanguageDef {
  std::vector<GrammarDecl> grammars;
  std::vector<Rule> rules;
  bool operator==(const LanguageDef&) const = default;
};

struct ParseError : std::runtime_error {
  int line;
  int col;
  ParseError(const std::string& msg, int line, int col);
};

LanguageDef parse_language(std::string_view text);

// Round-trip printer: output re-parses to an equal LanguageDef.
std::string print_language(const LanguageDef& lang);
std::string print_term(const Term& t);
std::string print_formula(const Formula& f);
std::string print_rule(const Rule& r);

// Left-to-right pre-order listing of Var occurrences, duplicates preserved.
std::vector<MetaVar> term_vars(const Term& t);

}  // namespace lnc

#endif
