#include <algorithm>
#include <bitset>
#include <functional>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "fragmc/engines.hpp"
#include "fragmc/syntax.hpp"
#include "graph_util.hpp"

namespace fragmc {
namespace {

void collect_embeds(const PathFormula& f, std::vector<StateFormula>& out) {
  if (f.kind() == Kind::Embed) {
    out.push_back(f.state());
    return;
  }
  if (f.node()->lhs) collect_embeds(f.lhs(), out);
  if (f.node()->rhs) collect_embeds(f.rhs(), out);
}

// Bottom-up labelling shared by both CTL+ engines: quantified subformulas are
// decided innermost first and recorded under a fresh proposition name.
class PlusLabeller {
 public:
  using Decider = std::function<std::vector<char>(const PathFormula&, const EmbedResolver&)>;

  PlusLabeller(const KripkeStructure& K, Decider decide) : K_(K), table_(K.size()), decide_(std::move(decide)) {}

  std::vector<char> eval(const StateFormula& f) {
    if (const auto* row = table_.find(f)) return *row;
    std::vector<char> out;
    std::string label;
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
      case Kind::Forall: {
        std::vector<StateFormula> embeds;
        collect_embeds(f.path(), embeds);
        for (const auto& e : embeds) eval(e);
        EmbedResolver resolve = [this](const StateFormula& s) { return eval(s); };
        if (f.kind() == Kind::Exists)
          out = decide_(f.path(), resolve);
        else
          out = graph::complement(decide_(negate(f.path()), resolve));
        label = "__ps" + std::to_string(fresh_++);
        break;
      }
      default:
        throw std::logic_error("path kind at state position");
    }
    table_.add(f, out, label);
    return out;
  }

  LabelTable take() { return std::move(table_); }

 private:
  const KripkeStructure& K_;
  LabelTable table_;
  Decider decide_;
  std::size_t fresh_ = 0;
};

// ---------------------------------------------------------------------------
// E psi for psi a Boolean combination of X-chains, by progression: the parts
// of psi that talk about the current position are evaluated, one X is
// stripped, and the residue must hold from some successor.

struct Progress {
  int constant = -1;  // 0 / 1 when the residue is decided
  PathFormula residue{nullptr};
};

class XSearch {
 public:
  XSearch(const KripkeStructure& K, const EmbedResolver& resolve) : K_(K), resolve_(resolve) {}

  bool exists(State w, const PathFormula& psi) {
    Progress p = progress(psi, w);
    if (p.constant >= 0) return p.constant == 1;
    const Key key{p.residue, w};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool r = false;
    for (State s : K_.successors(w))
      if (exists(s, p.residue)) {
        r = true;
        break;
      }
    memo_.emplace(key, r);
    return r;
  }

 private:
  struct Key {
    PathFormula f;
    State w;
    bool operator==(const Key& o) const { return w == o.w && f == o.f; }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const { return k.f.hash() * 31 + k.w; }
  };

  const std::vector<char>& truth(const StateFormula& s) {
    auto it = cache_.find(s);
    if (it == cache_.end()) it = cache_.emplace(s, resolve_(s)).first;
    return it->second;
  }

  Progress progress(const PathFormula& f, State w) {
    switch (f.kind()) {
      case Kind::Embed:
        return {truth(f.state())[w] ? 1 : 0, PathFormula(nullptr)};
      case Kind::Next:
        return {-1, f.lhs()};
      case Kind::PathNot: {
        Progress a = progress(f.lhs(), w);
        if (a.constant >= 0) return {1 - a.constant, PathFormula(nullptr)};
        return {-1, negate(a.residue)};
      }
      case Kind::PathAnd:
      case Kind::PathOr: {
        const bool is_and = f.kind() == Kind::PathAnd;
        const int absorbing = is_and ? 0 : 1;
        Progress a = progress(f.lhs(), w);
        if (a.constant == absorbing) return a;
        Progress b = progress(f.rhs(), w);
        if (b.constant == absorbing) return b;
        if (a.constant >= 0) return b;  // neutral element
        if (b.constant >= 0) return a;
        return {-1, is_and ? conj(a.residue, b.residue) : disj(a.residue, b.residue)};
      }
      default:
        throw FragmentError("operator outside {A, E, X} in " + to_string(f));
    }
  }

  const KripkeStructure& K_;
  const EmbedResolver& resolve_;
  std::unordered_map<StateFormula, std::vector<char>, StateFormulaHash> cache_;
  std::unordered_map<Key, bool, KeyHash> memo_;
};

// ---------------------------------------------------------------------------
// Tableau for E chi, chi in negation normal form. A node is a world together
// with a fully expanded set of obligations; edges follow transitions and pass
// on the X-obligations. Some path satisfies chi iff an initial node reaches a
// strongly connected part in which every eventuality is fulfilled.

constexpr std::size_t kMaxClosure = 256;
using Set = std::bitset<kMaxClosure>;

struct SetHash {
  std::size_t operator()(const Set& s) const { return std::hash<Set>{}(s); }
};

class Tableau {
 public:
  Tableau(const KripkeStructure& K, const PathFormula& chi, const EmbedResolver& resolve) : K_(K) {
    root_ = add(chi);
    close();
    if (entries_.size() > kMaxClosure) throw std::length_error("path formula too large for the tableau");
    for (const auto& s : embeds_) base_.push_back(resolve(s));
    for (std::size_t e = 0; e < entries_.size(); ++e) {
      const Kind k = entries_[e].kind;
      if (k == Kind::Future || k == Kind::Until || k == Kind::AlmostAlways) eventualities_.push_back(e);
    }
    if (eventualities_.size() > kMaxClosure) throw std::length_error("too many eventualities");
  }

  std::vector<char> solve() {
    const std::size_t n = K_.size();
    std::vector<std::vector<std::size_t>> initial(n);
    Set start;
    start.set(root_);
    for (State w = 0; w < n; ++w) initial[w] = expand(w, start);

    // Explore all nodes reachable from the initial ones.
    for (std::size_t v = 0; v < nodes_.size(); ++v) {
      Set next;
      for (std::size_t e = 0; e < entries_.size(); ++e)
        if (nodes_[v].set.test(e) && entries_[e].kind == Kind::Next) next.set(entries_[e].a);
      std::vector<std::size_t> targets;
      for (State s : K_.successors(nodes_[v].world)) {
        const auto& t = expand(s, next);
        targets.insert(targets.end(), t.begin(), t.end());
      }
      std::sort(targets.begin(), targets.end());
      targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
      out_.resize(nodes_.size());
      out_[v] = std::move(targets);
    }
    out_.resize(nodes_.size());

    const std::vector<char> good = fulfilling();
    // Backward reachability to a good node.
    std::vector<std::vector<std::size_t>> in(nodes_.size());
    for (std::size_t v = 0; v < nodes_.size(); ++v)
      for (std::size_t u : out_[v]) in[u].push_back(v);
    std::vector<char> live = good;
    std::vector<std::size_t> queue;
    for (std::size_t v = 0; v < nodes_.size(); ++v)
      if (live[v]) queue.push_back(v);
    while (!queue.empty()) {
      std::size_t v = queue.back();
      queue.pop_back();
      for (std::size_t u : in[v])
        if (!live[u]) {
          live[u] = 1;
          queue.push_back(u);
        }
    }
    std::vector<char> result(n, 0);
    for (State w = 0; w < n; ++w)
      for (std::size_t v : initial[w])
        if (live[v]) result[w] = 1;
    return result;
  }

  std::size_t nodes() const { return nodes_.size(); }

 private:
  struct Entry {
    Kind kind;
    int a = -1, b = -1;
    int embed = -1;
    // Expansion helpers: X self, and F a / G a for Fi / Gi.
    int next_self = -1, aux = -1;
  };
  struct Node {
    State world;
    Set set;
  };

  int add(const PathFormula& f) {
    if (auto it = index_.find(f); it != index_.end()) return it->second;
    Entry e{f.kind()};
    switch (f.kind()) {
      case Kind::Embed: {
        auto [it, fresh] = embed_index_.emplace(f.state(), static_cast<int>(embeds_.size()));
        if (fresh) embeds_.push_back(f.state());
        e.embed = it->second;
        break;
      }
      case Kind::PathNot:
        throw std::logic_error("tableau input is not in negation normal form");
      default:
        e.a = add(f.lhs());
        if (f.node()->rhs) e.b = add(f.rhs());
        break;
    }
    entries_.push_back(e);
    formulas_.push_back(f);
    const int id = static_cast<int>(entries_.size()) - 1;
    index_.emplace(f, id);
    pending_.push_back(id);
    return id;
  }

  // Adds the X-unfoldings and auxiliary formulas the expansion rules need.
  void close() {
    while (!pending_.empty()) {
      const int id = pending_.back();
      pending_.pop_back();
      const PathFormula f = formulas_[id];
      switch (f.kind()) {
        case Kind::Future:
        case Kind::Globally:
        case Kind::Until:
        case Kind::Release: {
          const int nx = add(next(f));
          entries_[id].next_self = nx;
          break;
        }
        case Kind::InfOften: {
          const int nx = add(next(f));
          const int aux = add(eventually(f.lhs()));
          entries_[id].next_self = nx;
          entries_[id].aux = aux;
          break;
        }
        case Kind::AlmostAlways: {
          const int nx = add(next(f));
          const int aux = add(always(f.lhs()));
          entries_[id].next_self = nx;
          entries_[id].aux = aux;
          break;
        }
        default:
          break;
      }
    }
  }

  const std::vector<std::size_t>& expand(State w, const Set& todo) {
    auto& per_world = expansions_[w];
    if (auto it = per_world.find(todo); it != per_world.end()) return it->second;
    std::vector<std::size_t> ids;
    std::unordered_set<Set, SetHash> seen;
    expand_rec(w, todo, todo, seen);
    for (const Set& s : seen) ids.push_back(node_id(w, s));
    std::sort(ids.begin(), ids.end());
    return per_world.emplace(todo, std::move(ids)).first->second;
  }

  void expand_rec(State w, Set cur, Set open, std::unordered_set<Set, SetHash>& out) {
    for (;;) {
      if (open.none()) {
        out.insert(cur);
        return;
      }
      std::size_t i = open._Find_first();
      open.reset(i);
      const Entry& e = entries_[i];
      auto need = [&](int j) {
        if (!cur.test(j)) {
          cur.set(j);
          open.set(j);
        }
      };
      switch (e.kind) {
        case Kind::Embed:
          if (!base_[e.embed][w]) return;
          break;
        case Kind::Next:
          break;
        case Kind::PathAnd:
          need(e.a);
          need(e.b);
          break;
        case Kind::PathOr: {
          Set c2 = cur, o2 = open;
          if (!c2.test(e.b)) {
            c2.set(e.b);
            o2.set(e.b);
          }
          expand_rec(w, c2, o2, out);
          need(e.a);
          break;
        }
        case Kind::Future: {  // a | X F a
          Set c2 = cur, o2 = open;
          if (!c2.test(e.next_self)) {
            c2.set(e.next_self);
            o2.set(e.next_self);
          }
          expand_rec(w, c2, o2, out);
          need(e.a);
          break;
        }
        case Kind::Globally:  // a, X G a
          need(e.a);
          need(e.next_self);
          break;
        case Kind::Until: {  // b | (a, X U)
          Set c2 = cur, o2 = open;
          for (int j : {e.a, e.next_self})
            if (!c2.test(j)) {
              c2.set(j);
              o2.set(j);
            }
          expand_rec(w, c2, o2, out);
          need(e.b);
          break;
        }
        case Kind::Release: {  // (a, b) | (b, X R)
          Set c2 = cur, o2 = open;
          for (int j : {e.b, e.next_self})
            if (!c2.test(j)) {
              c2.set(j);
              o2.set(j);
            }
          expand_rec(w, c2, o2, out);
          need(e.a);
          need(e.b);
          break;
        }
        case Kind::InfOften:  // F a, X Fi a
          need(e.aux);
          need(e.next_self);
          break;
        case Kind::AlmostAlways: {  // G a | X Gi a
          Set c2 = cur, o2 = open;
          if (!c2.test(e.next_self)) {
            c2.set(e.next_self);
            o2.set(e.next_self);
          }
          expand_rec(w, c2, o2, out);
          need(e.aux);
          break;
        }
        default:
          throw std::logic_error("unexpected tableau entry");
      }
    }
  }

  std::size_t node_id(State w, const Set& s) {
    auto& per_world = node_index_[w];
    auto [it, fresh] = per_world.emplace(s, nodes_.size());
    if (fresh) nodes_.push_back({w, s});
    return it->second;
  }

  // Fulfilment target of eventuality entry e.
  int target(std::size_t e) const {
    const Entry& en = entries_[e];
    if (en.kind == Kind::Until) return en.b;
    if (en.kind == Kind::Future) return en.a;
    return en.aux;  // Gi a: G a
  }

  // Nodes on a closed walk that fulfils all eventualities it carries.
  std::vector<char> fulfilling() const {
    const std::size_t n = nodes_.size();
    std::vector<char> alive(n, 1);
    for (;;) {
      auto [comp, count] = scc(alive);
      std::vector<char> nontrivial(count, 0);
      std::vector<Set> present(count);
      for (std::size_t v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        present[comp[v]] |= nodes_[v].set;
        for (std::size_t u : out_[v])
          if (alive[u] && comp[u] == comp[v]) nontrivial[comp[v]] = 1;
      }
      bool changed = false;
      for (std::size_t v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        bool ok = nontrivial[comp[v]];
        for (std::size_t k = 0; ok && k < eventualities_.size(); ++k) {
          const std::size_t e = eventualities_[k];
          if (nodes_[v].set.test(e) && !present[comp[v]].test(target(e))) ok = false;
        }
        if (!ok) {
          alive[v] = 0;
          changed = true;
        }
      }
      if (!changed) return alive;
    }
  }

  std::pair<std::vector<std::size_t>, std::size_t> scc(const std::vector<char>& alive) const {
    const std::size_t n = nodes_.size();
    std::vector<std::size_t> comp(n, SIZE_MAX), low(n, 0), num(n, SIZE_MAX);
    std::vector<char> on(n, 0);
    std::vector<std::size_t> stack;
    std::vector<std::pair<std::size_t, std::size_t>> call;
    std::size_t counter = 0, comps = 0;
    for (std::size_t root = 0; root < n; ++root) {
      if (!alive[root] || num[root] != SIZE_MAX) continue;
      call.emplace_back(root, 0);
      num[root] = low[root] = counter++;
      stack.push_back(root);
      on[root] = 1;
      while (!call.empty()) {
        auto& [v, pos] = call.back();
        if (pos < out_[v].size()) {
          std::size_t w = out_[v][pos++];
          if (!alive[w]) continue;
          if (num[w] == SIZE_MAX) {
            num[w] = low[w] = counter++;
            stack.push_back(w);
            on[w] = 1;
            call.emplace_back(w, 0);
          } else if (on[w]) {
            low[v] = std::min(low[v], num[w]);
          }
          continue;
        }
        std::size_t done = v;
        call.pop_back();
        if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
        if (low[done] == num[done]) {
          std::size_t w;
          do {
            w = stack.back();
            stack.pop_back();
            on[w] = 0;
            comp[w] = comps;
          } while (w != done);
          ++comps;
        }
      }
    }
    return {std::move(comp), comps};
  }

  const KripkeStructure& K_;
  std::vector<Entry> entries_;
  std::vector<PathFormula> formulas_;
  std::unordered_map<PathFormula, int, PathFormulaHash> index_;
  std::vector<int> pending_;
  std::vector<StateFormula> embeds_;
  std::unordered_map<StateFormula, int, StateFormulaHash> embed_index_;
  std::vector<std::vector<char>> base_;
  std::vector<std::size_t> eventualities_;
  int root_ = -1;

  std::vector<Node> nodes_;
  std::map<State, std::unordered_map<Set, std::size_t, SetHash>> node_index_;
  std::map<State, std::unordered_map<Set, std::vector<std::size_t>, SetHash>> expansions_;
  std::vector<std::vector<std::size_t>> out_;
};

EmbedResolver table_resolver(const KripkeStructure& K, const LabelTable& table) {
  return [&K, &table](const StateFormula& s) {
    if (const auto* row = table.find(s)) return *row;
    return evaluate_propositional(K, s);
  };
}

}  // namespace

LabelTable check_ctlplus_aex(const KripkeStructure& K, const StateFormula& f) {
  const OperatorSet ops = separate_operators(f);
  for (const auto& op : ops)
    if (op != "A" && op != "E" && op != "X")
      throw FragmentError("A/E/X labelling engine does not accept operator " + op);
  PlusLabeller l(K, [&K](const PathFormula& psi, const EmbedResolver& resolve) {
    XSearch search(K, resolve);
    std::vector<char> out(K.size(), 0);
    for (State w = 0; w < K.size(); ++w) out[w] = search.exists(w, psi);
    return out;
  });
  l.eval(f);
  return l.take();
}

std::vector<char> exists_path_tableau_all(const KripkeStructure& K, const PathFormula& chi, const EmbedResolver& base) {
  Tableau t(K, to_nnf(chi), base);
  return t.solve();
}

bool exists_path_tableau(const KripkeStructure& K, State w, const PathFormula& chi, const EmbedResolver& base) {
  return exists_path_tableau_all(K, chi, base).at(w) != 0;
}

bool exists_path_tableau(const KripkeStructure& K, State w, const PathFormula& chi, const LabelTable& base) {
  return exists_path_tableau(K, w, chi, table_resolver(K, base));
}

LabelTable check_ctlplus_general(const KripkeStructure& K, const StateFormula& f) {
  PlusLabeller l(K, [&K](const PathFormula& psi, const EmbedResolver& resolve) {
    return exists_path_tableau_all(K, psi, resolve);
  });
  l.eval(f);
  return l.take();
}

}  // namespace fragmc
