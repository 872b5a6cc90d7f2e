#pragma once

// Reference semantics by search over ultimately periodic paths.

#include <cstddef>
#include <functional>
#include <vector>

#include "fragmc/formula.hpp"
#include "fragmc/kripke.hpp"

namespace fragmc {

enum class Truth { False, True, Unknown };

inline Truth truth_of(bool b) { return b ? Truth::True : Truth::False; }
const char* to_string(Truth t);

/// The path prefix . cycle^omega.
struct Lasso {
  std::vector<State> prefix;
  std::vector<State> cycle;
};

/// Throws ModelError unless consecutive states (including the wrap-around of
/// the cycle) are transitions of K and the cycle is nonempty.
void validate_lasso(const KripkeStructure& K, const Lasso& L);

/// Truth values of embedded state formulas, one entry per state.
using EmbedResolver = std::function<std::vector<char>(const StateFormula&)>;

/// Exact truth of chi on the lasso. Embedded state formulas are decided by
/// `resolve`, or by eval_oracle when it is empty (throws std::runtime_error if
/// that is indeterminate).
bool lasso_satisfies(const KripkeStructure& K, const Lasso& L, const PathFormula& chi,
                     const EmbedResolver& resolve = {});

struct LassoSearch {
  /// Some lasso with |prefix| <= bound and |cycle| <= bound satisfies chi.
  std::vector<char> bounded;
  /// Some path at all satisfies chi.
  std::vector<char> exact;
  std::size_t vertices = 0;  // size of the truth-vector graph
};

/// Decides chi from every state at once. Throws std::invalid_argument when
/// bound is 0 and std::length_error when chi is too large for the search.
LassoSearch search_lassos(const KripkeStructure& K, const PathFormula& chi, std::size_t bound,
                          const EmbedResolver& resolve);

/// True iff some lasso from w within the bound satisfies chi.
bool exists_path_lasso(const KripkeStructure& K, State w, const PathFormula& chi, std::size_t bound);

/// |W| * (t + 1), t = temporal operators of chi outside embedded formulas.
std::size_t default_lasso_bound(const KripkeStructure& K, const PathFormula& chi);

struct OracleOptions {
  std::size_t bound = 0;       // 0: default_lasso_bound
  bool escalate = true;        // double the bound on an indeterminate answer
  std::size_t cap_factor = 4;  // escalation stops at cap_factor * default bound
  std::size_t cap = 0;         // explicit cap overrides cap_factor when nonzero
};

struct OracleStats {
  std::size_t searches = 0;
  std::size_t escalations = 0;
  std::size_t indeterminate = 0;  // quantified subformulas left undecided
};

/// Truth of f at every state. A chi is decided as ~E~chi. A bounded "no
/// witness" answer is Unknown when a witness beyond the bound exists.
std::vector<Truth> eval_oracle_all(const KripkeStructure& K, const StateFormula& f,
                                   const OracleOptions& opts = {}, OracleStats* stats = nullptr);

Truth eval_oracle(const KripkeStructure& K, State w, const StateFormula& f, const OracleOptions& opts = {},
                  OracleStats* stats = nullptr);

}  // namespace fragmc
