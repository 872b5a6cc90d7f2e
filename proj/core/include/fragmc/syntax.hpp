#pragma once

// Syntactic analysis: logic family, operator set, negation discipline, NNF.

#include <optional>
#include <set>
#include <string>

#include "fragmc/formula.hpp"

namespace fragmc {

enum class Family { Propositional, CTL, ECTL, CTLplus, ECTLplus, CTLstar };

/// Ordered mon < an < pos < full.
enum class Discipline { Mon, An, Pos, Full };

/// Paired tokens ("AX", "EFi", "AU", ...) for CTL/ECTL, separate tokens
/// ("A", "E", "X", "F", "G", "U", "R", "Fi", "Gi") for the plus families.
using OperatorSet = std::set<std::string>;

struct FragmentProfile {
  Family family = Family::Propositional;
  OperatorSet operators;
  Discipline discipline = Discipline::Mon;
};

std::string to_string(Family f);
std::string to_string(Discipline d);
std::optional<Family> parse_family(const std::string& s);  // case-insensitive
std::optional<Discipline> parse_discipline(const std::string& s);

/// Least family containing f.
Family syntactic_class(const StateFormula& f);

/// True iff `body` (a quantifier body) is a single temporal operator applied
/// to embedded state formulas.
bool is_ctl_body(const PathFormula& body);

/// True iff `body` is a Boolean combination of embedded state formulas,
/// single temporal operators over embedded state formulas, and X applied to
/// such combinations.
bool is_ctlplus_body(const PathFormula& body);

/// Operator tokens of f, in the style of its family. Empty for propositional f.
OperatorSet operator_set(const StateFormula& f);

/// Paired tokens of every quantifier/temporal pair, regardless of family.
OperatorSet paired_operators(const StateFormula& f);
/// Separate quantifier and temporal tokens, regardless of family.
OperatorSet separate_operators(const StateFormula& f);

/// Least discipline containing f.
Discipline negation_discipline(const StateFormula& f);

FragmentProfile profile_of(const StateFormula& f);

/// Negation normal form: negations only in front of atoms.
StateFormula to_nnf(const StateFormula& f);
PathFormula to_nnf(const PathFormula& f);

/// Replaces F by Fi and G by Gi everywhere.
StateFormula lift_to_ectl(const StateFormula& f);
/// Replaces Fi by F and Gi by G everywhere.
StateFormula lower_from_ectl(const StateFormula& f);

/// True iff f contains an F or G operator.
bool has_future_or_globally(const StateFormula& f);

/// Dual of a paired or separate token ("EX" -> "AX", "F" -> "G", "X" -> "X").
std::string dual_token(const std::string& token);

}  // namespace fragmc
