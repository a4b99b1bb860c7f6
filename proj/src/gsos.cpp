#include "lnc/gsos.hpp"

#include <set>

#include "lnc/eval.hpp"

namespace lnc::gsos {

// Identical to share/gsos.lnc: five checks, one per line, run in order.
const std::string& bundled_source() {
  static const std::string src =
      R"(rules[-->]: premises must match P --((?op []))--> P' | P -/-((?op []))--> otherwise error "Premises must be either positive labeled transitions or negative labeled transitions, and their label must be a constant";;
rules[-->]: match conclusion with (?op1 Ps) --((?op2 []))--> P' -> Ps[P]: if not(isVar(P)) then error "The operator that is the subject of the conclusion must have all metavariables as arguments" otherwise error "Conclusion formulae must be positive labeled transitions with a constant label and must apply to an operator";;
rules[-->]: if not(premises.LTsources sublistOf getVars(conclusion.LTsource)) then error "Sources of premises must be arguments of the operator in the source of the conclusion" else premises.LTtargets[P]: if not(isVar(P)) then error "Targets of premises must be metavariables";;
rules[-->]: distinctVars(getVars(conclusion.LTsource) @ premises.LTtargets) otherwise error "The arguments of the operator in the source of the conclusion and the targets of the premises must all be distinct metavariables";;
rules[-->]: if not(getVars(conclusion.LTtarget) sublistOf (getVars(conclusion.LTsource) @ premises.LTtargets)) then error "The metavariables in the target of the conclusion must come from the source of the conclusion or from the targets of premises"
)";
  return src;
}

const Program& bundled_program() {
  static const Program prog = parse_program(bundled_source());
  return prog;
}

int part_of_message(const std::string& message) {
  if (message == kMsgPart1) return 1;
  if (message == kMsgPart2Args || message == kMsgPart2Shape) return 2;
  if (message == kMsgPart3Sources || message == kMsgPart3Targets) return 3;
  if (message == kMsgPart4) return 4;
  if (message == kMsgPart5) return 5;
  return 0;
}

ValidationReport validate_gsos(const LanguageDef& lang) {
  try {
    Evaluator ev(lang);
    ev.run(bundled_program());
    return ValidationReport{};
  } catch (const EvalError& e) {
    ValidationReport rep;
    rep.pass = false;
    rep.message = e.message;
    rep.part = e.kind == EvalError::Kind::UserError ? part_of_message(e.message)
                                                    : 0;
    rep.rule_index = e.rule_index.value_or(0);
    if (e.rule) rep.rule_text = print_rule(*e.rule);
    return rep;
  }
}

namespace {

bool constant_label(const Term& t) { return t.is_constant(); }

ValidationReport failure(int part, const char* msg, int index,
                         const Rule& rule) {
  ValidationReport rep;
  rep.pass = false;
  rep.part = part;
  rep.message = msg;
  rep.rule_index = index;
  rep.rule_text = print_rule(rule);
  return rep;
}

}  // namespace

// The checks run part-by-part across all rules, matching the DSL program's
// statement order: a Part 1 defect anywhere in the file is reported before a
// Part 2 defect in an earlier rule. Rules whose conclusion is not a positive
// transition are never selected, exactly as with rules[-->].
ValidationReport reference_check(const LanguageDef& lang) {
  for (int part = 1; part <= 5; ++part) {
    for (size_t i = 0; i < lang.rules.size(); ++i) {
      const Rule& rule = lang.rules[i];
      const int index = static_cast<int>(i) + 1;
      if (rule.conclusion.kind != Formula::Kind::Pos) continue;
      const Term& src = rule.conclusion.source();
      switch (part) {
        case 1:
          for (const auto& p : rule.premises) {
            bool ok = (p.kind == Formula::Kind::Pos ||
                       p.kind == Formula::Kind::Neg) &&
                      constant_label(p.label());
            if (!ok) return failure(1, kMsgPart1, index, rule);
          }
          break;
        case 2: {
          if (src.kind != Term::Kind::App ||
              !constant_label(rule.conclusion.label()))
            return failure(2, kMsgPart2Shape, index, rule);
          for (const auto& arg : src.args)
            if (!arg.is_var()) return failure(2, kMsgPart2Args, index, rule);
          break;
        }
        case 3: {
          std::vector<Term> xs;
          for (const auto& mv : term_vars(src)) xs.push_back(Term::mk_var(mv));
          for (const auto& p : rule.premises) {
            bool found = false;
            for (const auto& x : xs)
              if (x == p.source()) {
                found = true;
                break;
              }
            if (!found) return failure(3, kMsgPart3Sources, index, rule);
          }
          for (const auto& p : rule.premises)
            if (p.kind == Formula::Kind::Pos && !p.target().is_var())
              return failure(3, kMsgPart3Targets, index, rule);
          break;
        }
        case 4: {
          // xs of the conclusion and ys of the premises, all distinct
          std::vector<MetaVar> seen = term_vars(src);
          for (const auto& p : rule.premises)
            if (p.kind == Formula::Kind::Pos) seen.push_back(p.target().var);
          std::set<std::string> names;
          for (const auto& mv : seen)
            if (!names.insert(mv.name()).second)
              return failure(4, kMsgPart4, index, rule);
          break;
        }
        case 5: {
          std::set<std::string> allowed;
          for (const auto& mv : term_vars(src)) allowed.insert(mv.name());
          for (const auto& p : rule.premises)
            if (p.kind == Formula::Kind::Pos)
              allowed.insert(p.target().var.name());
          for (const auto& mv : term_vars(rule.conclusion.target()))
            if (!allowed.count(mv.name()))
              return failure(5, kMsgPart5, index, rule);
          break;
        }
      }
    }
  }
  return ValidationReport{};
}

}  // namespace lnc::gsos
