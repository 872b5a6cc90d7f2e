#include <algorithm>
#include <stdexcept>

#include "fragmc/engines.hpp"
#include "fragmc/syntax.hpp"
#include "graph_util.hpp"

namespace fragmc {

const std::vector<char>* LabelTable::find(const StateFormula& f) const {
  for (std::size_t i = formulas_.size(); i-- > 0;)
    if (formulas_[i] == f) return &rows_[i];
  return nullptr;
}

std::size_t LabelTable::add(const StateFormula& f, std::vector<char> values, std::string label) {
  if (values.size() != states_) throw std::logic_error("label row has the wrong length");
  if (find(f)) throw std::logic_error("label row written twice: " + to_string(f));
  formulas_.push_back(f);
  labels_.push_back(label.empty() ? to_string(f) : std::move(label));
  rows_.push_back(std::move(values));
  return rows_.size() - 1;
}

std::vector<char> evaluate_propositional(const KripkeStructure& K, const StateFormula& f) {
  const std::size_t n = K.size();
  switch (f.kind()) {
    case Kind::True:
      return std::vector<char>(n, 1);
    case Kind::False:
      return std::vector<char>(n, 0);
    case Kind::Atom: {
      std::vector<char> out(n, 0);
      if (auto p = K.prop(f.atom_name()))
        for (State s = 0; s < n; ++s) out[s] = K.holds(s, *p);
      return out;
    }
    case Kind::Not:
      return graph::complement(evaluate_propositional(K, f.lhs()));
    case Kind::And:
      return graph::meet(evaluate_propositional(K, f.lhs()), evaluate_propositional(K, f.rhs()));
    case Kind::Or:
      return graph::join(evaluate_propositional(K, f.lhs()), evaluate_propositional(K, f.rhs()));
    default:
      throw FragmentError("formula is not propositional: " + to_string(f));
  }
}

namespace graph {

std::vector<char> complement(std::vector<char> a) {
  for (auto& x : a) x = !x;
  return a;
}

std::vector<char> meet(std::vector<char> a, const std::vector<char>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] && b[i];
  return a;
}

std::vector<char> join(std::vector<char> a, const std::vector<char>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] || b[i];
  return a;
}

std::vector<char> nontrivial_scc_states(const KripkeStructure& K, const std::vector<char>& keep) {
  auto [comp, count] = strongly_connected_components(K, keep);
  std::vector<char> nontrivial(count, 0);
  for (State s = 0; s < K.size(); ++s) {
    if (!keep.empty() && !keep[s]) continue;
    for (State t : K.successors(s))
      if ((keep.empty() || keep[t]) && comp[t] == comp[s]) nontrivial[comp[s]] = 1;
  }
  std::vector<char> out(K.size(), 0);
  for (State s = 0; s < K.size(); ++s)
    if ((keep.empty() || keep[s]) && nontrivial[comp[s]]) out[s] = 1;
  return out;
}

}  // namespace graph

namespace {

class Labeller {
 public:
  Labeller(const KripkeStructure& K, CtlStats* stats) : K_(K), n_(K.size()), table_(K.size()), stats_(stats) {}

  std::vector<char> eval(const StateFormula& f) {
    if (const auto* row = table_.find(f)) return *row;
    std::vector<char> out;
    switch (f.kind()) {
      case Kind::True:
      case Kind::False:
      case Kind::Atom:
        out = evaluate_propositional(K_, f);
        break;
      case Kind::Not:
        out = graph::complement(eval(f.lhs()));
        break;
      case Kind::And: {
        auto a = eval(f.lhs());
        out = graph::meet(std::move(a), eval(f.rhs()));
        break;
      }
      case Kind::Or: {
        auto a = eval(f.lhs());
        out = graph::join(std::move(a), eval(f.rhs()));
        break;
      }
      case Kind::Exists:
      case Kind::Forall:
        out = quantified(f);
        break;
      default:
        throw std::logic_error("path kind at state position");
    }
    table_.add(f, out);
    return out;
  }

  LabelTable take() { return std::move(table_); }

 private:
  std::vector<char> quantified(const StateFormula& f) {
    const PathFormula body = f.path();
    if (!is_ctl_body(body)) throw FragmentError("not a CTL operator: " + to_string(f));
    const bool ex = f.kind() == Kind::Exists;
    const std::vector<char> a = eval(body.lhs().state());
    const std::vector<char> b = body.node()->rhs ? eval(body.rhs().state()) : std::vector<char>{};
    using graph::complement;
    using graph::join;
    using graph::meet;
    const std::vector<char> all(n_, 1);
    switch (body.kind()) {
      case Kind::Next:
        return ex ? ex_(a) : complement(ex_(complement(a)));
      case Kind::Future:
        return ex ? eu(all, a) : au(all, a);
      case Kind::Globally:
        return ex ? eg(a) : complement(eu(all, complement(a)));
      case Kind::Until:
        return ex ? eu(a, b) : au(a, b);
      case Kind::Release:
        return ex ? join(eg(b), eu(b, meet(a, b))) : complement(eu(complement(a), complement(b)));
      case Kind::InfOften:
        return ex ? efi(a) : complement(egi(complement(a)));
      case Kind::AlmostAlways:
        return ex ? egi(a) : complement(efi(complement(a)));
      default:
        throw FragmentError("not a CTL operator: " + to_string(f));
    }
  }

  std::vector<char> ex_(const std::vector<char>& a) const {
    std::vector<char> out(n_, 0);
    for (State s = 0; s < n_; ++s)
      for (State t : K_.successors(s))
        if (a[t]) {
          out[s] = 1;
          break;
        }
    return out;
  }

  // Least fixpoint Z = b | (a & EX Z), one BFS layer per iterate.
  std::vector<char> eu(const std::vector<char>& a, const std::vector<char>& b) {
    FixpointTrace trace{"EU", true, {}};
    std::vector<char> z(n_, 0);
    std::vector<State> frontier;
    for (State s = 0; s < n_; ++s)
      if (b[s]) {
        z[s] = 1;
        frontier.push_back(s);
      }
    std::size_t size = frontier.size();
    trace.sizes.push_back(0);
    trace.sizes.push_back(size);
    while (!frontier.empty()) {
      std::vector<State> next;
      for (State t : frontier)
        for (State s : K_.predecessors(t))
          if (!z[s] && a[s]) {
            z[s] = 1;
            next.push_back(s);
          }
      if (next.empty()) break;
      size += next.size();
      trace.sizes.push_back(size);
      frontier = std::move(next);
    }
    if (stats_) stats_->fixpoints.push_back(std::move(trace));
    return z;
  }

  // Greatest fixpoint Z = a & EX Z; each round drops the states left without
  // a successor inside Z.
  std::vector<char> eg(const std::vector<char>& a) {
    FixpointTrace trace{"EG", false, {}};
    std::vector<char> z = a;
    std::vector<std::size_t> count(n_, 0);
    std::vector<State> drop;
    std::size_t size = 0;
    for (State s = 0; s < n_; ++s) {
      if (!z[s]) continue;
      ++size;
      for (State t : K_.successors(s)) count[s] += z[t] ? 1 : 0;
      if (count[s] == 0) drop.push_back(s);
    }
    trace.sizes.push_back(n_);
    trace.sizes.push_back(size);
    while (!drop.empty()) {
      for (State s : drop) z[s] = 0;
      size -= drop.size();
      trace.sizes.push_back(size);
      std::vector<State> next;
      for (State t : drop)
        for (State s : K_.predecessors(t))
          if (z[s] && --count[s] == 0) next.push_back(s);
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      drop = std::move(next);
    }
    if (stats_) stats_->fixpoints.push_back(std::move(trace));
    return z;
  }

  std::vector<char> au(const std::vector<char>& a, const std::vector<char>& b) {
    using graph::complement;
    const auto nb = complement(b);
    const auto bad = graph::join(eu(nb, graph::meet(complement(a), nb)), eg(nb));
    return complement(bad);
  }

  // Some reachable cycle passes through an a-state.
  std::vector<char> efi(const std::vector<char>& a) {
    const auto cyclic = graph::nontrivial_scc_states(K_, {});
    auto [comp, count] = strongly_connected_components(K_);
    std::vector<char> good(count, 0);
    for (State s = 0; s < n_; ++s)
      if (a[s] && cyclic[s]) good[comp[s]] = 1;
    std::vector<char> seeds(n_, 0);
    for (State s = 0; s < n_; ++s) seeds[s] = good[comp[s]];
    return eu(std::vector<char>(n_, 1), seeds);
  }

  // Some reachable cycle stays inside the a-states.
  std::vector<char> egi(const std::vector<char>& a) {
    return eu(std::vector<char>(n_, 1), graph::nontrivial_scc_states(K_, a));
  }

  const KripkeStructure& K_;
  std::size_t n_;
  LabelTable table_;
  CtlStats* stats_;
};

}  // namespace

LabelTable check_ctl(const KripkeStructure& K, const StateFormula& f, CtlStats* stats) {
  const Family fam = syntactic_class(f);
  if (fam != Family::Propositional && fam != Family::CTL && fam != Family::ECTL)
    throw FragmentError("labelling engine needs a CTL or ECTL formula, got " + to_string(fam));
  Labeller l(K, stats);
  l.eval(f);
  return l.take();
}

}  // namespace fragmc
