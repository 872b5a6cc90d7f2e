#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fragmc/errors.hpp"
#include "fragmc/formula.hpp"

namespace fragmc {

using State = std::uint32_t;
using PropId = std::uint32_t;

enum class Totality {
  Require,  // sink states are a ModelError
  Repair,   // sink states get a self-loop
};

/// Finite Kripke structure (W, R, eta) with a total transition relation.
/// States keep their declaration order; successor lists are sorted and unique.
class KripkeStructure {
 public:
  std::size_t size() const { return names_.size(); }
  std::size_t transition_count() const { return edge_count_; }

  const std::string& name(State s) const { return names_[s]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<State> find(const std::string& name) const;
  /// Like find, but throws ModelError for an unknown name.
  State at(const std::string& name) const;

  const std::vector<State>& successors(State s) const { return succ_[s]; }
  const std::vector<State>& predecessors(State s) const { return pred_[s]; }
  bool has_edge(State from, State to) const;

  /// Proposition alphabet in order of first use.
  const std::vector<std::string>& propositions() const { return props_; }
  std::optional<PropId> prop(const std::string& name) const;
  bool holds(State s, PropId p) const { return label_bits_[p][s] != 0; }
  /// Atoms outside the alphabet hold nowhere.
  bool holds(State s, const std::string& name) const;
  /// Sorted labels of s.
  std::vector<std::string> labels(State s) const;

 private:
  friend class KripkeBuilder;
  std::vector<std::string> names_;
  std::unordered_map<std::string, State> index_;
  std::vector<std::vector<State>> succ_, pred_;
  std::size_t edge_count_ = 0;
  std::vector<std::string> props_;
  std::unordered_map<std::string, PropId> prop_index_;
  std::vector<std::vector<char>> label_bits_;  // [prop][state]
};

class KripkeBuilder {
 public:
  /// Throws ModelError on a duplicate name.
  State add_state(const std::string& name);
  /// Adds the state unless it exists already.
  State ensure_state(const std::string& name);
  bool has_state(const std::string& name) const { return index_.count(name) != 0; }
  /// Throws ModelError if an endpoint is undeclared.
  void add_transition(const std::string& from, const std::string& to);
  void add_transition(State from, State to);
  void add_label(const std::string& state, const std::string& prop);
  void add_label(State s, const std::string& prop);
  /// Declares a proposition even if no state carries it.
  void declare_prop(const std::string& prop);

  /// Validates totality and freezes the structure.
  KripkeStructure build(Totality mode = Totality::Require) const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, State> index_;
  std::vector<std::pair<State, State>> edges_;
  std::vector<std::string> props_;
  std::unordered_map<std::string, PropId> prop_index_;
  std::vector<std::pair<State, PropId>> labels_;
};

/// Builder pre-filled with the contents of K.
KripkeBuilder to_builder(const KripkeStructure& K);

/// Reachability facts over the SCC condensation. The per-component state
/// bitsets behind reach() are built on first use; the rest is eager.
class GraphIndex {
 public:
  explicit GraphIndex(const KripkeStructure& K);

  /// Reflexive-transitive reachability (R*).
  bool reach(State from, State to) const;
  /// Transitive reachability (R+).
  bool proper_reach(State from, State to) const;
  /// On some cycle, i.e. (x, x) in R+.
  bool cyclic(State x) const { return scc_cyclic_[scc_[x]]; }

  std::size_t scc_count() const { return members_.size(); }
  std::size_t scc_of(State x) const { return scc_[x]; }
  const std::vector<State>& members(std::size_t c) const { return members_[c]; }
  bool scc_cyclic(std::size_t c) const { return scc_cyclic_[c]; }
  /// Components in reverse topological order: every component comes after all
  /// components it can reach.
  const std::vector<std::size_t>& bottom_up() const { return order_; }
  const std::vector<std::size_t>& scc_successors(std::size_t c) const { return dag_[c]; }

 private:
  std::size_t n_;
  std::vector<std::size_t> scc_;
  std::vector<std::vector<State>> members_;
  std::vector<char> scc_cyclic_;
  std::vector<std::size_t> order_;
  std::vector<std::vector<std::size_t>> dag_;
  struct ReachCache;
  std::shared_ptr<ReachCache> reach_;  // per component, bitset over states
  const std::vector<std::vector<std::uint64_t>>& reach_bits() const;
};

/// Strongly connected components of the subgraph induced by `keep` (all states
/// when empty). Returns the component id of every kept state (SIZE_MAX for
/// dropped ones) and the component count. Ids are assigned in reverse
/// topological order.
std::pair<std::vector<std::size_t>, std::size_t> strongly_connected_components(
    const KripkeStructure& K, const std::vector<char>& keep = {});

/// R' = R plus all self-loops.
KripkeStructure reflexive_closure(const KripkeStructure& K);

/// Replaces each negated atom ~p by a fresh atom q_p with eta'(w) adding q_p
/// exactly where p is absent. f must have negation discipline mon or an.
/// Throws FragmentError otherwise and ModelError on a name collision.
std::pair<KripkeStructure, StateFormula> elim_atomic_negation(const KripkeStructure& K, const StateFormula& f);

/// Fresh proposition name used by elim_atomic_negation.
std::string negated_atom_name(const std::string& p);

}  // namespace fragmc
