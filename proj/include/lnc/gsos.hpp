#ifndef LNC_GSOS_HPP
#define LNC_GSOS_HPP

#include <optional>
#include <string>

#include "lnc/ast.hpp"
#include "lnc/sos.hpp"

// The bundled GSOS validator DSL program, a driver that runs it over a
// LanguageDef, and an independent natively-coded reference checker used as
// a testing oracle.

namespace lnc::gsos {

// The five checks, in the order they run. A rule passes the GSOS format iff
// its conclusion is a positive transition  (op x1 ... xh) --(l)--> t  with
// constant labels everywhere, premise sources drawn from the xs, premise
// targets fresh distinct metavariables, and vars(t) within xs and targets.
inline constexpr const char* kMsgPart1 =
    "Premises must be either positive labeled transitions or negative "
    "labeled transitions, and their label must be a constant";
inline constexpr const char* kMsgPart2Args =
    "The operator that is the subject of the conclusion must have all "
    "metavariables as arguments";
inline constexpr const char* kMsgPart2Shape =
    "Conclusion formulae must be positive labeled transitions with a "
    "constant label and must apply to an operator";
inline constexpr const char* kMsgPart3Sources =
    "Sources of premises must be arguments of the operator in the source "
    "of the conclusion";
inline constexpr const char* kMsgPart3Targets =
    "Targets of premises must be metavariables";
inline constexpr const char* kMsgPart4 =
    "The arguments of the operator in the source of the conclusion and the "
    "targets of the premises must all be distinct metavariables";
inline constexpr const char* kMsgPart5 =
    "The metavariables in the target of the conclusion must come from the "
    "source of the conclusion or from the targets of premises";

struct ValidationReport {
  bool pass = true;
  int part = 0;  // 1..5 on failure; 0 marks an evaluator fault (a bug)
  std::string message;
  int rule_index = 0;  // 1-based file order of the offending rule
  std::string rule_text;
  bool operator==(const ValidationReport&) const = default;
};

// The shipped validator source (identical to share/gsos.lnc).
const std::string& bundled_source();

// The parsed, desugared validator: 5 checks, macro-free.
const Program& bundled_program();

// Evaluates the bundled program over `lang` via the DSL evaluator.
ValidationReport validate_gsos(const LanguageDef& lang);

// Direct re-implementation of the GSOS restrictions; serves as oracle.
// Checks run part-by-part across all rules (mirroring the statement order
// of the DSL program), rules in file order within each part.
ValidationReport reference_check(const LanguageDef& lang);

// Maps one of the fixed messages back to its part number (0 if unknown).
int part_of_message(const std::string& message);

}  // namespace lnc::gsos

#endif
