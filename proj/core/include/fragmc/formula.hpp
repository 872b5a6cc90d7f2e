#pragma once

// Two-sorted temporal formula AST.
//
// State formulas are evaluated at a state, path formulas along a path. Nodes
// are immutable and shared; both wrapper types are cheap to copy. The path
// Boolean constructors fold Boolean combinations of embedded state formulas
// into a single embedded state formula, so each formula has exactly one AST.

#include <cstddef>
#include <functional>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

namespace fragmc {

enum class Kind : unsigned char {
  // state sort
  True,
  False,
  Atom,
  Not,
  And,
  Or,
  Exists,
  Forall,
  // path sort
  Embed,
  PathNot,
  PathAnd,
  PathOr,
  Next,
  Future,
  Globally,
  Until,
  Release,
  InfOften,      // F∞
  AlmostAlways,  // G∞
};

bool is_state_kind(Kind k);
bool is_temporal_kind(Kind k);  // Next .. AlmostAlways

namespace detail {
struct Node {
  Kind kind;
  std::string name;  // Atom only
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
  std::size_t hash = 0;
  std::size_t size = 1;
  std::size_t depth = 0;
};
using NodePtr = std::shared_ptr<const Node>;
bool deep_equal(const Node& a, const Node& b);
}  // namespace detail

class PathFormula;

class StateFormula {
 public:
  Kind kind() const { return node_->kind; }
  const std::string& atom_name() const { return node_->name; }
  /// Operand of Not; left operand of And/Or.
  StateFormula lhs() const { return StateFormula(node_->lhs); }
  StateFormula rhs() const { return StateFormula(node_->rhs); }
  /// Body of Exists/Forall.
  PathFormula path() const;

  std::size_t size() const { return node_->size; }
  std::size_t depth() const { return node_->depth; }
  std::size_t hash() const { return node_->hash; }
  const detail::Node* node() const { return node_.get(); }
  const detail::NodePtr& ptr() const { return node_; }

  friend bool operator==(const StateFormula& a, const StateFormula& b) {
    return a.node_ == b.node_ || detail::deep_equal(*a.node_, *b.node_);
  }
  friend bool operator!=(const StateFormula& a, const StateFormula& b) { return !(a == b); }

  explicit StateFormula(detail::NodePtr node) : node_(std::move(node)) {}

 private:
  detail::NodePtr node_;
};

class PathFormula {
 public:
  Kind kind() const { return node_->kind; }
  /// Embedded state formula of an Embed node.
  StateFormula state() const { return StateFormula(node_->lhs); }
  /// Operand of unary path operators; left operand of binary ones.
  PathFormula lhs() const { return PathFormula(node_->lhs); }
  PathFormula rhs() const { return PathFormula(node_->rhs); }

  std::size_t size() const { return node_->size; }
  std::size_t depth() const { return node_->depth; }
  std::size_t hash() const { return node_->hash; }
  const detail::Node* node() const { return node_.get(); }
  const detail::NodePtr& ptr() const { return node_; }

  friend bool operator==(const PathFormula& a, const PathFormula& b) {
    return a.node_ == b.node_ || detail::deep_equal(*a.node_, *b.node_);
  }
  friend bool operator!=(const PathFormula& a, const PathFormula& b) { return !(a == b); }

  explicit PathFormula(detail::NodePtr node) : node_(std::move(node)) {}

 private:
  detail::NodePtr node_;
};

inline PathFormula StateFormula::path() const { return PathFormula(node_->lhs); }

struct StateFormulaHash {
  std::size_t operator()(const StateFormula& f) const { return f.hash(); }
};
struct PathFormulaHash {
  std::size_t operator()(const PathFormula& f) const { return f.hash(); }
};

// State constructors.
StateFormula top();
StateFormula bottom();
StateFormula atom(std::string name);
StateFormula negate(StateFormula f);
StateFormula conj(StateFormula a, StateFormula b);
StateFormula disj(StateFormula a, StateFormula b);
StateFormula exists(PathFormula body);
StateFormula forall(PathFormula body);

// Path constructors.
PathFormula embed(StateFormula f);
PathFormula negate(PathFormula f);
PathFormula conj(PathFormula a, PathFormula b);
PathFormula disj(PathFormula a, PathFormula b);
PathFormula next(PathFormula f);
PathFormula eventually(PathFormula f);
PathFormula always(PathFormula f);
PathFormula until(PathFormula a, PathFormula b);
PathFormula release(PathFormula a, PathFormula b);
PathFormula inf_often(PathFormula f);
PathFormula almost_always(PathFormula f);

// Implication a -> b, written ~a | b.
StateFormula implies(StateFormula a, StateFormula b);
PathFormula implies(PathFormula a, PathFormula b);

/// Folds a list with conj/disj. Empty conjunction is true, empty disjunction false.
StateFormula conj_all(const std::vector<StateFormula>& fs);
StateFormula disj_all(const std::vector<StateFormula>& fs);
PathFormula conj_all(const std::vector<PathFormula>& fs);
PathFormula disj_all(const std::vector<PathFormula>& fs);

// Common CTL shorthands.
inline StateFormula EX(StateFormula f) { return exists(next(embed(std::move(f)))); }
inline StateFormula AX(StateFormula f) { return forall(next(embed(std::move(f)))); }
inline StateFormula EF(StateFormula f) { return exists(eventually(embed(std::move(f)))); }
inline StateFormula AF(StateFormula f) { return forall(eventually(embed(std::move(f)))); }
inline StateFormula EG(StateFormula f) { return exists(always(embed(std::move(f)))); }
inline StateFormula AG(StateFormula f) { return forall(always(embed(std::move(f)))); }
inline StateFormula EU(StateFormula a, StateFormula b) {
  return exists(until(embed(std::move(a)), embed(std::move(b))));
}
inline StateFormula AU(StateFormula a, StateFormula b) {
  return forall(until(embed(std::move(a)), embed(std::move(b))));
}
inline StateFormula ER(StateFormula a, StateFormula b) {
  return exists(release(embed(std::move(a)), embed(std::move(b))));
}
inline StateFormula AR(StateFormula a, StateFormula b) {
  return forall(release(embed(std::move(a)), embed(std::move(b))));
}

/// Concrete syntax. parse_formula(to_string(f)) == f.
std::string to_string(const StateFormula& f);
std::string to_string(const PathFormula& f);
std::ostream& operator<<(std::ostream& os, const StateFormula& f);
std::ostream& operator<<(std::ostream& os, const PathFormula& f);

/// True iff `name` can be written without quotes.
bool is_plain_identifier(const std::string& name);

/// Atoms occurring anywhere in f, sorted and unique.
std::vector<std::string> atoms_of(const StateFormula& f);

/// Number of temporal operator occurrences in a path formula, not counting
/// those inside embedded state formulas.
std::size_t temporal_count(const PathFormula& f);

/// Rebuilds f bottom-up, replacing every atom through `rename`.
StateFormula map_atoms(const StateFormula& f, const std::function<StateFormula(const std::string&)>& rename);
PathFormula map_atoms(const PathFormula& f, const std::function<StateFormula(const std::string&)>& rename);

}  // namespace fragmc
