#pragma once

// Model-checking engines.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fragmc/errors.hpp"
#include "fragmc/formula.hpp"
#include "fragmc/kripke.hpp"
#include "fragmc/oracle.hpp"

namespace fragmc {

/// Truth of state subformulas at every state, in bottom-up order. Each row is
/// written once.
class LabelTable {
 public:
  explicit LabelTable(std::size_t states = 0) : states_(states) {}

  std::size_t states() const { return states_; }
  std::size_t size() const { return formulas_.size(); }
  const StateFormula& formula(std::size_t i) const { return formulas_[i]; }
  /// Name of the proposition standing for row i ("__ps<k>" for rows
  /// introduced by the CTL+ engines, the printed formula otherwise).
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<char>& row(std::size_t i) const { return rows_[i]; }

  /// Row of f, or nullptr.
  const std::vector<char>* find(const StateFormula& f) const;
  /// Appends a row. Throws std::logic_error if f already has one.
  std::size_t add(const StateFormula& f, std::vector<char> values, std::string label = {});

  /// The last row written, i.e. the checked formula itself.
  const std::vector<char>& result() const { return rows_.back(); }
  bool holds(State s) const { return rows_.back()[s] != 0; }

 private:
  std::size_t states_;
  std::vector<StateFormula> formulas_;
  std::vector<std::string> labels_;
  std::vector<std::vector<char>> rows_;
};

/// Sizes of the iterates of one fixpoint computation.
struct FixpointTrace {
  std::string op;                  // "EU" or "EG"
  bool increasing = true;          // least (EU) or greatest (EG) fixpoint
  std::vector<std::size_t> sizes;  // size of iterate 0, 1, ...
};

struct CtlStats {
  std::vector<FixpointTrace> fixpoints;
};

/// Global labelling for CTL and ECTL. Throws FragmentError for other shapes.
LabelTable check_ctl(const KripkeStructure& K, const StateFormula& f, CtlStats* stats = nullptr);

/// Memoized top-down evaluation for positive formulas over {EX, EF, EFi} or
/// over {AX, AG, AGi}. Construction throws FragmentError outside that fragment.
class TopDownChecker {
 public:
  TopDownChecker(const KripkeStructure& K, const StateFormula& f);
  ~TopDownChecker();
  TopDownChecker(TopDownChecker&&) noexcept;
  TopDownChecker& operator=(TopDownChecker&&) noexcept;

  bool check(State w);
  /// Memo entries written so far.
  std::size_t entries() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

bool check_topdown_pos(const KripkeStructure& K, State w0, const StateFormula& f);

/// Labelling for CTL+ with operator tokens within {A, E, X}.
LabelTable check_ctlplus_aex(const KripkeStructure& K, const StateFormula& f);

/// Some path from each state satisfies chi, decided on the tableau product.
/// Embedded state formulas are looked up through `base`; chi is brought into
/// negation normal form first.
std::vector<char> exists_path_tableau_all(const KripkeStructure& K, const PathFormula& chi, const EmbedResolver& base);
bool exists_path_tableau(const KripkeStructure& K, State w, const PathFormula& chi, const EmbedResolver& base);
/// Same, looking embedded formulas up in a label table (propositional
/// formulas may be missing from it and are evaluated directly).
bool exists_path_tableau(const KripkeStructure& K, State w, const PathFormula& chi, const LabelTable& base);

/// Labelling with the tableau as path oracle; CTL+ and ECTL+ (and, beyond
/// the classified fragments, any formula whose quantifier bodies it can
/// expand).
LabelTable check_ctlplus_general(const KripkeStructure& K, const StateFormula& f);

/// Direct evaluation of a quantifier-free formula.
std::vector<char> evaluate_propositional(const KripkeStructure& K, const StateFormula& f);

enum class Engine { Propositional, TopDown, Labelling, CtlplusAex, CtlplusGeneral, Oracle };

std::string to_string(Engine e);
/// Accepts the identifiers of to_string plus "ctlplus" (general) and "aex".
std::optional<Engine> parse_engine(const std::string& s);

/// Cheapest engine accepting f. Throws FragmentError for CTL* formulas
/// outside ECTL+.
Engine select_engine(const StateFormula& f);

/// Throws FragmentError when `e` does not accept f.
void require_engine_accepts(Engine e, const StateFormula& f);

/// Truth at every state with the given engine. The oracle engine maps
/// indeterminate states to false; use eval_oracle_all to see them.
std::vector<char> check_all(const KripkeStructure& K, const StateFormula& f, Engine e);
std::vector<char> check_all(const KripkeStructure& K, const StateFormula& f);

}  // namespace fragmc
