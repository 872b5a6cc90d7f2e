#pragma once

// Complexity classification of model-checking fragments.

#include <string>

#include "fragmc/formula.hpp"
#include "fragmc/syntax.hpp"

namespace fragmc {

enum class ComplexityClass { NC1, LOGCFL, P, NP, coNP, DeltaP2 };

std::string to_string(ComplexityClass c);

/// Position in NC1 < LOGCFL < P < {NP, coNP} < DeltaP2. NP and coNP share a rank.
int rank(ComplexityClass c);

struct ComplexityVerdict {
  ComplexityClass cls = ComplexityClass::NC1;
  std::string completeness = "complete";
  std::string theorem;  // "Thm 3.2", "Cor 4.4", ...
  std::string rule;     // the condition that fired
  std::string engine;   // engine identifier, see to_string(Engine)
};

/// Throws FragmentError for CTL* profiles, plus-family profiles without a
/// path quantifier, and tokens that do not belong to the profile's family.
ComplexityVerdict classify(const FragmentProfile& profile);

/// classify(profile_of(f)); the engine agrees with select_engine(f).
ComplexityVerdict classify_formula(const StateFormula& f);

/// The ten CTL operators and the four ECTL additions, in canonical order.
const std::vector<std::string>& ctl_operator_tokens();
const std::vector<std::string>& ectl_operator_tokens();
/// A E X F G U R, then Fi Gi.
const std::vector<std::string>& plus_operator_tokens();

}  // namespace fragmc
