#include "fragmc/kripke.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <mutex>

#include "fragmc/syntax.hpp"

namespace fragmc {

std::optional<State> KripkeStructure::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

State KripkeStructure::at(const std::string& name) const {
  auto s = find(name);
  if (!s) throw ModelError("unknown state '" + name + "'");
  return *s;
}

bool KripkeStructure::has_edge(State from, State to) const {
  const auto& s = succ_[from];
  return std::binary_search(s.begin(), s.end(), to);
}

std::optional<PropId> KripkeStructure::prop(const std::string& name) const {
  auto it = prop_index_.find(name);
  if (it == prop_index_.end()) return std::nullopt;
  return it->second;
}

bool KripkeStructure::holds(State s, const std::string& name) const {
  auto p = prop(name);
  return p && holds(s, *p);
}

std::vector<std::string> KripkeStructure::labels(State s) const {
  std::vector<std::string> out;
  for (PropId p = 0; p < props_.size(); ++p)
    if (label_bits_[p][s]) out.push_back(props_[p]);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

State KripkeBuilder::add_state(const std::string& name) {
  if (name.empty()) throw ModelError("empty state name");
  if (index_.count(name)) throw ModelError("duplicate state '" + name + "'");
  State s = static_cast<State>(names_.size());
  names_.push_back(name);
  index_.emplace(name, s);
  return s;
}

State KripkeBuilder::ensure_state(const std::string& name) {
  auto it = index_.find(name);
  return it != index_.end() ? it->second : add_state(name);
}

void KripkeBuilder::add_transition(const std::string& from, const std::string& to) {
  auto a = index_.find(from);
  if (a == index_.end()) throw ModelError("transition from undeclared state '" + from + "'");
  auto b = index_.find(to);
  if (b == index_.end()) throw ModelError("transition to undeclared state '" + to + "'");
  edges_.emplace_back(a->second, b->second);
}

void KripkeBuilder::add_transition(State from, State to) {
  if (from >= names_.size() || to >= names_.size()) throw ModelError("transition endpoint out of range");
  edges_.emplace_back(from, to);
}

void KripkeBuilder::declare_prop(const std::string& prop) {
  if (prop.empty()) throw ModelError("empty proposition name");
  if (!prop_index_.count(prop)) {
    prop_index_.emplace(prop, static_cast<PropId>(props_.size()));
    props_.push_back(prop);
  }
}

void KripkeBuilder::add_label(const std::string& state, const std::string& prop) {
  auto a = index_.find(state);
  if (a == index_.end()) throw ModelError("label for undeclared state '" + state + "'");
  add_label(a->second, prop);
}

void KripkeBuilder::add_label(State s, const std::string& prop) {
  if (s >= names_.size()) throw ModelError("labelled state out of range");
  declare_prop(prop);
  labels_.emplace_back(s, prop_index_.at(prop));
}

KripkeStructure KripkeBuilder::build(Totality mode) const {
  KripkeStructure K;
  const std::size_t n = names_.size();
  if (n == 0) throw ModelError("structure has no states");
  K.names_ = names_;
  K.index_ = index_;
  K.succ_.assign(n, {});
  K.pred_.assign(n, {});
  for (auto [a, b] : edges_) K.succ_[a].push_back(b);
  for (State s = 0; s < n; ++s) {
    auto& v = K.succ_[s];
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    if (v.empty()) {
      if (mode == Totality::Require) throw ModelError("state '" + names_[s] + "' has no successor");
      v.push_back(s);
    }
    K.edge_count_ += v.size();
    for (State t : v) K.pred_[t].push_back(s);
  }
  K.props_ = props_;
  K.prop_index_ = prop_index_;
  K.label_bits_.assign(props_.size(), std::vector<char>(n, 0));
  for (auto [s, p] : labels_) K.label_bits_[p][s] = 1;
  return K;
}

KripkeBuilder to_builder(const KripkeStructure& K) {
  KripkeBuilder b;
  for (const auto& name : K.names()) b.add_state(name);
  for (const auto& p : K.propositions()) b.declare_prop(p);
  for (State s = 0; s < K.size(); ++s) {
    for (State t : K.successors(s)) b.add_transition(s, t);
    for (PropId p = 0; p < K.propositions().size(); ++p)
      if (K.holds(s, p)) b.add_label(s, K.propositions()[p]);
  }
  return b;
}

// ---------------------------------------------------------------------------

std::pair<std::vector<std::size_t>, std::size_t> strongly_connected_components(const KripkeStructure& K,
                                                                               const std::vector<char>& keep) {
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  const std::size_t n = K.size();
  auto kept = [&](State s) { return keep.empty() || keep[s]; };
  std::vector<std::size_t> comp(n, kNone), low(n, 0), num(n, kNone);
  std::vector<char> on_stack(n, 0);
  std::vector<State> stack;
  std::vector<std::pair<State, std::size_t>> call;  // (state, next successor position)
  std::size_t counter = 0, comps = 0;

  for (State root = 0; root < n; ++root) {
    if (!kept(root) || num[root] != kNone) continue;
    call.emplace_back(root, 0);
    num[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [v, pos] = call.back();
      const auto& succ = K.successors(v);
      if (pos < succ.size()) {
        State w = succ[pos++];
        if (!kept(w)) continue;
        if (num[w] == kNone) {
          num[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], num[w]);
        }
        continue;
      }
      State done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == num[done]) {
        State w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = comps;
        } while (w != done);
        ++comps;
      }
    }
  }
  return {std::move(comp), comps};
}

GraphIndex::GraphIndex(const KripkeStructure& K) : n_(K.size()) {
  auto [comp, count] = strongly_connected_components(K);
  scc_ = std::move(comp);
  members_.assign(count, {});
  for (State s = 0; s < n_; ++s) members_[scc_[s]].push_back(s);
  scc_cyclic_.assign(count, 0);
  dag_.assign(count, {});
  for (State s = 0; s < n_; ++s) {
    for (State t : K.successors(s)) {
      if (scc_[t] == scc_[s])
        scc_cyclic_[scc_[s]] = 1;
      else
        dag_[scc_[s]].push_back(scc_[t]);
    }
  }
  for (auto& d : dag_) {
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
  }
  // Tarjan numbers components in reverse topological order already.
  order_.resize(count);
  for (std::size_t c = 0; c < count; ++c) order_[c] = c;

  reach_ = std::make_shared<ReachCache>();
}

struct GraphIndex::ReachCache {
  std::once_flag once;
  std::vector<std::vector<std::uint64_t>> bits;
};

const std::vector<std::vector<std::uint64_t>>& GraphIndex::reach_bits() const {
  std::call_once(reach_->once, [this] {
    const std::size_t words = (n_ + 63) / 64;
    auto& all = reach_->bits;
    all.assign(members_.size(), std::vector<std::uint64_t>(words, 0));
    for (std::size_t c : order_) {
      auto& bits = all[c];
      for (State s : members_[c]) bits[s / 64] |= std::uint64_t{1} << (s % 64);
      for (std::size_t d : dag_[c])
        for (std::size_t i = 0; i < words; ++i) bits[i] |= all[d][i];
    }
  });
  return reach_->bits;
}

bool GraphIndex::reach(State from, State to) const {
  return (reach_bits()[scc_[from]][to / 64] >> (to % 64)) & 1U;
}

bool GraphIndex::proper_reach(State from, State to) const {
  if (from == to) return cyclic(from);
  return reach(from, to);
}

// ---------------------------------------------------------------------------

KripkeStructure reflexive_closure(const KripkeStructure& K) {
  KripkeBuilder b = to_builder(K);
  for (State s = 0; s < K.size(); ++s) b.add_transition(s, s);
  return b.build();
}

std::string negated_atom_name(const std::string& p) { return "q_" + p; }

std::pair<KripkeStructure, StateFormula> elim_atomic_negation(const KripkeStructure& K, const StateFormula& f) {
  if (negation_discipline(f) > Discipline::An)
    throw FragmentError("atomic negation elimination needs negations on atoms only");
  const auto atoms = atoms_of(f);
  std::unordered_map<std::string, std::string> fresh;
  for (const auto& p : atoms) {
    std::string q = negated_atom_name(p);
    if (K.prop(q) || std::binary_search(atoms.begin(), atoms.end(), q))
      throw ModelError("fresh proposition '" + q + "' already in use");
    fresh.emplace(p, q);
  }

  KripkeBuilder b = to_builder(K);
  for (const auto& p : atoms) b.declare_prop(fresh.at(p));
  for (State s = 0; s < K.size(); ++s)
    for (const auto& p : atoms)
      if (!K.holds(s, p)) b.add_label(s, fresh.at(p));

  std::function<StateFormula(const StateFormula&)> rewrite_state;
  std::function<PathFormula(const PathFormula&)> rewrite_path;
  rewrite_state = [&](const StateFormula& g) -> StateFormula {
    switch (g.kind()) {
      case Kind::Not:
        return atom(fresh.at(g.lhs().atom_name()));
      case Kind::And:
        return conj(rewrite_state(g.lhs()), rewrite_state(g.rhs()));
      case Kind::Or:
        return disj(rewrite_state(g.lhs()), rewrite_state(g.rhs()));
      case Kind::Exists:
        return exists(rewrite_path(g.path()));
      case Kind::Forall:
        return forall(rewrite_path(g.path()));
      default:
        return g;
    }
  };
  rewrite_path = [&](const PathFormula& g) -> PathFormula {
    switch (g.kind()) {
      case Kind::Embed:
        return embed(rewrite_state(g.state()));
      case Kind::PathAnd:
        return conj(rewrite_path(g.lhs()), rewrite_path(g.rhs()));
      case Kind::PathOr:
        return disj(rewrite_path(g.lhs()), rewrite_path(g.rhs()));
      case Kind::Next:
        return next(rewrite_path(g.lhs()));
      case Kind::Future:
        return eventually(rewrite_path(g.lhs()));
      case Kind::Globally:
        return always(rewrite_path(g.lhs()));
      case Kind::InfOften:
        return inf_often(rewrite_path(g.lhs()));
      case Kind::AlmostAlways:
        return almost_always(rewrite_path(g.lhs()));
      case Kind::Until:
        return until(rewrite_path(g.lhs()), rewrite_path(g.rhs()));
      case Kind::Release:
        return release(rewrite_path(g.lhs()), rewrite_path(g.rhs()));
      default:
        return g;
    }
  };
  return {b.build(), rewrite_state(f)};
}

}  // namespace fragmc
