#include "fragmc/oracle.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace fragmc {

const char* to_string(Truth t) {
  switch (t) {
    case Truth::False:
      return "false";
    case Truth::True:
      return "true";
    default:
      return "indeterminate";
  }
}

void validate_lasso(const KripkeStructure& K, const Lasso& L) {
  if (L.cycle.empty()) throw ModelError("lasso cycle is empty");
  std::vector<State> seq = L.prefix;
  seq.insert(seq.end(), L.cycle.begin(), L.cycle.end());
  for (State s : seq)
    if (s >= K.size()) throw ModelError("lasso state out of range");
  for (std::size_t i = 0; i + 1 < seq.size(); ++i)
    if (!K.has_edge(seq[i], seq[i + 1]))
      throw ModelError("lasso step " + K.name(seq[i]) + "->" + K.name(seq[i + 1]) + " is not a transition");
  if (!K.has_edge(L.cycle.back(), L.cycle.front()))
    throw ModelError("lasso cycle does not close: " + K.name(L.cycle.back()) + "->" + K.name(L.cycle.front()));
}

namespace {

// Subformulas of a path formula, children before parents. Embedded state
// formulas are leaves.
struct Closure {
  struct Entry {
    Kind kind;
    int a = -1, b = -1;
    int embed = -1;
  };
  std::vector<Entry> entries;
  std::vector<StateFormula> embeds;
  int root = -1;

  explicit Closure(const PathFormula& chi) { root = add(chi); }

 private:
  std::unordered_map<PathFormula, int, PathFormulaHash> index_;
  std::unordered_map<StateFormula, int, StateFormulaHash> embed_index_;

  int add(const PathFormula& f) {
    if (auto it = index_.find(f); it != index_.end()) return it->second;
    Entry e{f.kind()};
    if (f.kind() == Kind::Embed) {
      auto [it, fresh] = embed_index_.emplace(f.state(), static_cast<int>(embeds.size()));
      if (fresh) embeds.push_back(f.state());
      e.embed = it->second;
    } else {
      e.a = add(f.lhs());
      if (f.node()->rhs) e.b = add(f.rhs());
    }
    entries.push_back(e);
    int id = static_cast<int>(entries.size()) - 1;
    index_.emplace(f, id);
    return id;
  }
};

using Base = std::vector<std::vector<char>>;  // [embed][state]

Base resolve_embeds(const Closure& c, const EmbedResolver& resolve) {
  Base base;
  for (const auto& s : c.embeds) base.push_back(resolve(s));
  return base;
}

// ---------------------------------------------------------------------------
// Exact evaluation on one explicit lasso.

bool evaluate_lasso(const Closure& c, const Base& base, const Lasso& L) {
  const std::size_t m = L.cycle.size(), k = L.prefix.size();
  const std::size_t n = c.entries.size();
  std::vector<std::vector<char>> cyc(n, std::vector<char>(m, 0)), pre(n, std::vector<char>(k, 0));

  for (std::size_t e = 0; e < n; ++e) {
    const auto& en = c.entries[e];
    auto& v = cyc[e];
    auto A = [&](std::size_t i) { return cyc[en.a][i]; };
    auto B = [&](std::size_t i) { return cyc[en.b][i]; };
    switch (en.kind) {
      case Kind::Embed:
        for (std::size_t i = 0; i < m; ++i) v[i] = base[en.embed][L.cycle[i]];
        break;
      case Kind::PathNot:
        for (std::size_t i = 0; i < m; ++i) v[i] = !A(i);
        break;
      case Kind::PathAnd:
        for (std::size_t i = 0; i < m; ++i) v[i] = A(i) && B(i);
        break;
      case Kind::PathOr:
        for (std::size_t i = 0; i < m; ++i) v[i] = A(i) || B(i);
        break;
      case Kind::Next:
        for (std::size_t i = 0; i < m; ++i) v[i] = A((i + 1) % m);
        break;
      case Kind::Future:
      case Kind::InfOften: {
        bool any = false;
        for (std::size_t i = 0; i < m; ++i) any = any || A(i);
        std::fill(v.begin(), v.end(), any);
        break;
      }
      case Kind::Globally:
      case Kind::AlmostAlways: {
        bool all = true;
        for (std::size_t i = 0; i < m; ++i) all = all && A(i);
        std::fill(v.begin(), v.end(), all);
        break;
      }
      case Kind::Until:
        std::fill(v.begin(), v.end(), 0);
        for (int pass = 0; pass < 2; ++pass)
          for (std::size_t i = m; i-- > 0;) v[i] = B(i) || (A(i) && v[(i + 1) % m]);
        break;
      case Kind::Release:
        std::fill(v.begin(), v.end(), 1);
        for (int pass = 0; pass < 2; ++pass)
          for (std::size_t i = m; i-- > 0;) v[i] = B(i) && (A(i) || v[(i + 1) % m]);
        break;
      default:
        throw std::logic_error("state kind inside path closure");
    }
  }

  // Prefix positions, last to first; position k is cycle position 0.
  for (std::size_t e = 0; e < n; ++e) {
    const auto& en = c.entries[e];
    auto at = [&](int idx, std::size_t i) -> bool { return i < k ? pre[idx][i] : cyc[idx][0]; };
    for (std::size_t i = k; i-- > 0;) {
      bool r;
      switch (en.kind) {
        case Kind::Embed:
          r = base[en.embed][L.prefix[i]];
          break;
        case Kind::PathNot:
          r = !at(en.a, i);
          break;
        case Kind::PathAnd:
          r = at(en.a, i) && at(en.b, i);
          break;
        case Kind::PathOr:
          r = at(en.a, i) || at(en.b, i);
          break;
        case Kind::Next:
          r = at(en.a, i + 1);
          break;
        case Kind::Future:
          r = at(en.a, i) || at(static_cast<int>(e), i + 1);
          break;
        case Kind::Globally:
          r = at(en.a, i) && at(static_cast<int>(e), i + 1);
          break;
        case Kind::Until:
          r = at(en.b, i) || (at(en.a, i) && at(static_cast<int>(e), i + 1));
          break;
        case Kind::Release:
          r = at(en.b, i) && (at(en.a, i) || at(static_cast<int>(e), i + 1));
          break;
        default:  // InfOften, AlmostAlways: suffix-invariant
          r = at(static_cast<int>(e), i + 1);
          break;
      }
      pre[e][i] = r;
    }
  }
  return k > 0 ? pre[c.root][0] : cyc[c.root][0];
}

// ---------------------------------------------------------------------------
// Truth-vector graph.
//
// A vertex is a state together with the truth vector of all closure entries
// at some position of a path. The vector at a position is a deterministic
// function of the state and the vector at the next position, so each vertex
// has exactly one predecessor vertex per predecessor state. A path through
// this graph carries the true values iff its cycle fulfils every eventuality
// it demands and respects the invariance of Fi/Gi on the cycle.

class VectorGraph {
 public:
  VectorGraph(const KripkeStructure& K, const Closure& c, const Base& base) : K_(K), c_(c), base_(base) {
    if (c.entries.size() > 64) throw std::length_error("path formula too large for the lasso oracle");
    collect_next_bits();
    if (next_bits_.size() > 16) throw std::length_error("path formula too large for the lasso oracle");
    build_vertices();
    build_edges();
    build_requirements();
  }

  std::size_t size() const { return states_.size(); }
  std::size_t eventualities() const { return eventualities_; }

  // Vertices lying on some fulfilled closed walk.
  std::vector<char> fulfilled_cycle_vertices() const {
    const std::size_t n = size();
    std::vector<char> alive = allowed_;
    for (;;) {
      auto [comp, count] = scc(alive);
      std::vector<std::uint64_t> dem(count, 0), ful(count, 0);
      std::vector<char> nontrivial(count, 0);
      for (std::size_t v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        dem[comp[v]] |= dem_[v];
        ful[comp[v]] |= ful_[v];
        for (std::size_t u : out_[v])
          if (alive[u] && comp[u] == comp[v]) nontrivial[comp[v]] = 1;
      }
      bool changed = false;
      for (std::size_t v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        const std::size_t cc = comp[v];
        if (!nontrivial[cc] || (dem_[v] & ~ful[cc])) {
          alive[v] = 0;
          changed = true;
        }
      }
      if (!changed) return alive;
    }
  }

  // Vertices with a fulfilled closed walk of length <= bound through them.
  std::vector<char> bounded_cycle_vertices(const std::vector<char>& candidates, std::size_t bound) const {
    std::vector<char> out(size(), 0);
    struct Key {
      std::size_t v;
      std::uint64_t d, f;
      bool operator==(const Key& o) const { return v == o.v && d == o.d && f == o.f; }
    };
    struct KeyHash {
      std::size_t operator()(const Key& k) const {
        return k.v * 0x9e3779b97f4a7c15ULL ^ (k.d * 0x85ebca6bULL) ^ (k.f * 0xc2b2ae35ULL);
      }
    };
    for (std::size_t z = 0; z < size(); ++z) {
      if (!candidates[z]) continue;
      std::unordered_set<Key, KeyHash> seen;
      std::vector<Key> frontier{{z, dem_[z], ful_[z]}};
      seen.insert(frontier[0]);
      bool found = false;
      for (std::size_t len = 1; len <= bound && !frontier.empty() && !found; ++len) {
        std::vector<Key> next;
        for (const Key& k : frontier) {
          for (std::size_t u : out_[k.v]) {
            if (!allowed_[u]) continue;
            if (u == z && (k.d & ~k.f) == 0) {
              found = true;
              break;
            }
            Key nk{u, k.d | dem_[u], k.f | ful_[u]};
            if (seen.insert(nk).second) next.push_back(nk);
          }
          if (found) break;
        }
        frontier = std::move(next);
      }
      out[z] = found;
    }
    return out;
  }

  // States from which a vertex with chi true reaches a seed within `depth`
  // steps (no limit when depth is SIZE_MAX).
  std::vector<char> answer(const std::vector<char>& seeds, std::size_t depth) const {
    const std::size_t n = size();
    std::vector<std::size_t> dist(n, SIZE_MAX);
    std::deque<std::size_t> queue;
    for (std::size_t v = 0; v < n; ++v)
      if (seeds[v]) {
        dist[v] = 0;
        queue.push_back(v);
      }
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      if (dist[v] >= depth) continue;
      for (std::size_t u : in_[v])
        if (dist[u] == SIZE_MAX) {
          dist[u] = dist[v] + 1;
          queue.push_back(u);
        }
    }
    std::vector<char> result(K_.size(), 0);
    for (std::size_t v = 0; v < n; ++v)
      if (dist[v] != SIZE_MAX && ((vectors_[v] >> c_.root) & 1U)) result[states_[v]] = 1;
    return result;
  }

 private:
  bool bit(std::uint64_t v, int i) const { return (v >> i) & 1U; }

  std::uint64_t step(State x, std::uint64_t next) const {
    std::uint64_t v = 0;
    for (std::size_t e = 0; e < c_.entries.size(); ++e) {
      const auto& en = c_.entries[e];
      const int self = static_cast<int>(e);
      bool r;
      switch (en.kind) {
        case Kind::Embed:
          r = base_[en.embed][x];
          break;
        case Kind::PathNot:
          r = !bit(v, en.a);
          break;
        case Kind::PathAnd:
          r = bit(v, en.a) && bit(v, en.b);
          break;
        case Kind::PathOr:
          r = bit(v, en.a) || bit(v, en.b);
          break;
        case Kind::Next:
          r = bit(next, en.a);
          break;
        case Kind::Future:
          r = bit(v, en.a) || bit(next, self);
          break;
        case Kind::Globally:
          r = bit(v, en.a) && bit(next, self);
          break;
        case Kind::Until:
          r = bit(v, en.b) || (bit(v, en.a) && bit(next, self));
          break;
        case Kind::Release:
          r = bit(v, en.b) && (bit(v, en.a) || bit(next, self));
          break;
        default:
          r = bit(next, self);
          break;
      }
      if (r) v |= std::uint64_t{1} << e;
    }
    return v;
  }

  void collect_next_bits() {
    std::vector<int> bits;
    for (std::size_t e = 0; e < c_.entries.size(); ++e) {
      const auto& en = c_.entries[e];
      if (en.kind == Kind::Next)
        bits.push_back(en.a);
      else if (is_temporal_kind(en.kind))
        bits.push_back(static_cast<int>(e));
    }
    std::sort(bits.begin(), bits.end());
    bits.erase(std::unique(bits.begin(), bits.end()), bits.end());
    next_bits_ = bits;
  }

  void build_vertices() {
    ids_.assign(K_.size(), {});
    const std::size_t combos = std::size_t{1} << next_bits_.size();
    for (State x = 0; x < K_.size(); ++x) {
      for (std::size_t a = 0; a < combos; ++a) {
        std::uint64_t next = 0;
        for (std::size_t i = 0; i < next_bits_.size(); ++i)
          if ((a >> i) & 1U) next |= std::uint64_t{1} << next_bits_[i];
        std::uint64_t v = step(x, next);
        if (ids_[x].emplace(v, states_.size()).second) {
          states_.push_back(x);
          vectors_.push_back(v);
        }
      }
    }
  }

  void build_edges() {
    out_.assign(size(), {});
    in_.assign(size(), {});
    for (std::size_t y = 0; y < size(); ++y) {
      for (State x : K_.predecessors(states_[y])) {
        std::size_t from = ids_[x].at(step(x, vectors_[y]));
        out_[from].push_back(y);
        in_[y].push_back(from);
      }
    }
  }

  void build_requirements() {
    dem_.assign(size(), 0);
    ful_.assign(size(), 0);
    allowed_.assign(size(), 1);
    int slot = 0;
    for (std::size_t e = 0; e < c_.entries.size(); ++e) {
      const auto& en = c_.entries[e];
      if (!is_temporal_kind(en.kind) || en.kind == Kind::Next) continue;
      const std::uint64_t mask = std::uint64_t{1} << slot++;
      for (std::size_t v = 0; v < size(); ++v) {
        const std::uint64_t vec = vectors_[v];
        const bool self = bit(vec, static_cast<int>(e));
        const bool a = bit(vec, en.a);
        const bool b = en.b >= 0 && bit(vec, en.b);
        switch (en.kind) {
          case Kind::Future:
            if (self) dem_[v] |= mask;
            if (a) ful_[v] |= mask;
            break;
          case Kind::Globally:
            if (!self) dem_[v] |= mask;
            if (!a) ful_[v] |= mask;
            break;
          case Kind::Until:
            if (self) dem_[v] |= mask;
            if (b) ful_[v] |= mask;
            break;
          case Kind::Release:
            if (!self) dem_[v] |= mask;
            if (!b) ful_[v] |= mask;
            break;
          case Kind::InfOften:
            if (self) dem_[v] |= mask;
            if (a) ful_[v] |= mask;
            if (!self && a) allowed_[v] = 0;
            break;
          case Kind::AlmostAlways:
            if (!self) dem_[v] |= mask;
            if (!a) ful_[v] |= mask;
            if (self && !a) allowed_[v] = 0;
            break;
          default:
            break;
        }
      }
    }
    eventualities_ = static_cast<std::size_t>(slot);
  }

  std::pair<std::vector<std::size_t>, std::size_t> scc(const std::vector<char>& alive) const {
    const std::size_t n = size();
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
  const Closure& c_;
  const Base& base_;
  std::vector<int> next_bits_;
  std::vector<std::unordered_map<std::uint64_t, std::size_t>> ids_;
  std::vector<State> states_;
  std::vector<std::uint64_t> vectors_;
  std::vector<std::vector<std::size_t>> out_, in_;
  std::vector<std::uint64_t> dem_, ful_;
  std::vector<char> allowed_;
  std::size_t eventualities_ = 0;
};

// ---------------------------------------------------------------------------

class Evaluator {
 public:
  Evaluator(const KripkeStructure& K, const OracleOptions& opts, OracleStats* stats)
      : K_(K), opts_(opts), stats_(stats) {}

  std::vector<Truth> eval(const StateFormula& f) {
    if (auto it = memo_.find(f); it != memo_.end()) return it->second;
    const std::size_t n = K_.size();
    std::vector<Truth> out(n, Truth::False);
    switch (f.kind()) {
      case Kind::True:
        std::fill(out.begin(), out.end(), Truth::True);
        break;
      case Kind::False:
        break;
      case Kind::Atom:
        for (State s = 0; s < n; ++s) out[s] = truth_of(K_.holds(s, f.atom_name()));
        break;
      case Kind::Not: {
        auto a = eval(f.lhs());
        for (State s = 0; s < n; ++s) out[s] = a[s] == Truth::Unknown ? Truth::Unknown : truth_of(a[s] == Truth::False);
        break;
      }
      case Kind::And:
      case Kind::Or: {
        auto a = eval(f.lhs());
        auto b = eval(f.rhs());
        const Truth dominant = f.kind() == Kind::And ? Truth::False : Truth::True;
        for (State s = 0; s < n; ++s) {
          if (a[s] == dominant || b[s] == dominant)
            out[s] = dominant;
          else if (a[s] == Truth::Unknown || b[s] == Truth::Unknown)
            out[s] = Truth::Unknown;
          else
            out[s] = f.kind() == Kind::And ? Truth::True : Truth::False;
        }
        break;
      }
      case Kind::Exists:
        out = quantify(f.path());
        break;
      case Kind::Forall: {
        auto e = quantify(negate(f.path()));
        for (State s = 0; s < n; ++s)
          out[s] = e[s] == Truth::Unknown ? Truth::Unknown : truth_of(e[s] == Truth::False);
        break;
      }
      default:
        throw std::logic_error("path kind at state position");
    }
    memo_.emplace(f, out);
    return out;
  }

 private:
  std::vector<Truth> quantify(const PathFormula& chi) {
    const std::size_t n = K_.size();
    Closure c(chi);
    Base base;
    for (const auto& s : c.embeds) {
      auto t = eval(s);
      std::vector<char> bits(n, 0);
      for (State x = 0; x < n; ++x) {
        if (t[x] == Truth::Unknown) {
          if (stats_) ++stats_->indeterminate;
          return std::vector<Truth>(n, Truth::Unknown);
        }
        bits[x] = t[x] == Truth::True;
      }
      base.push_back(std::move(bits));
    }

    const std::size_t def = default_lasso_bound(K_, chi);
    std::size_t bound = opts_.bound ? opts_.bound : def;
    const std::size_t cap = opts_.cap ? opts_.cap : std::max(bound, opts_.cap_factor * def);

    VectorGraph g(K_, c, base);
    const std::vector<char> good = g.fulfilled_cycle_vertices();
    const std::vector<char> exact = g.answer(good, SIZE_MAX);
    std::vector<Truth> out(n, Truth::Unknown);
    std::vector<char> open(n, 0);
    for (State x = 0; x < n; ++x) {
      if (!exact[x])
        out[x] = Truth::False;
      else
        open[x] = 1;
    }
    for (;;) {
      if (stats_) ++stats_->searches;
      const auto bounded = g.answer(g.bounded_cycle_vertices(good, bound), bound);
      bool pending = false;
      for (State x = 0; x < n; ++x) {
        if (!open[x]) continue;
        if (bounded[x]) {
          out[x] = Truth::True;
          open[x] = 0;
        } else {
          pending = true;
        }
      }
      if (!pending || !opts_.escalate || bound >= cap) break;
      bound = std::min(cap, bound * 2);
      if (stats_) ++stats_->escalations;
    }
    if (stats_)
      for (State x = 0; x < n; ++x)
        if (open[x]) ++stats_->indeterminate;
    return out;
  }

  const KripkeStructure& K_;
  OracleOptions opts_;
  OracleStats* stats_;
  std::unordered_map<StateFormula, std::vector<Truth>, StateFormulaHash> memo_;
};

EmbedResolver oracle_resolver(const KripkeStructure& K) {
  auto ev = std::make_shared<Evaluator>(K, OracleOptions{}, nullptr);
  return [ev](const StateFormula& s) {
    auto t = ev->eval(s);
    std::vector<char> bits(t.size(), 0);
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i] == Truth::Unknown) throw std::runtime_error("embedded formula is indeterminate: " + to_string(s));
      bits[i] = t[i] == Truth::True;
    }
    return bits;
  };
}

}  // namespace

bool lasso_satisfies(const KripkeStructure& K, const Lasso& L, const PathFormula& chi, const EmbedResolver& resolve) {
  validate_lasso(K, L);
  Closure c(chi);
  return evaluate_lasso(c, resolve_embeds(c, resolve ? resolve : oracle_resolver(K)), L);
}

LassoSearch search_lassos(const KripkeStructure& K, const PathFormula& chi, std::size_t bound,
                          const EmbedResolver& resolve) {
  if (bound == 0) throw std::invalid_argument("lasso bound must be positive");
  Closure c(chi);
  Base base = resolve_embeds(c, resolve ? resolve : oracle_resolver(K));
  VectorGraph g(K, c, base);
  LassoSearch r;
  r.vertices = g.size();
  const auto good = g.fulfilled_cycle_vertices();
  r.exact = g.answer(good, SIZE_MAX);
  r.bounded = g.answer(g.bounded_cycle_vertices(good, bound), bound);
  return r;
}

bool exists_path_lasso(const KripkeStructure& K, State w, const PathFormula& chi, std::size_t bound) {
  return search_lassos(K, chi, bound, {}).bounded.at(w) != 0;
}

std::size_t default_lasso_bound(const KripkeStructure& K, const PathFormula& chi) {
  return K.size() * (temporal_count(chi) + 1);
}

std::vector<Truth> eval_oracle_all(const KripkeStructure& K, const StateFormula& f, const OracleOptions& opts,
                                   OracleStats* stats) {
  Evaluator ev(K, opts, stats);
  return ev.eval(f);
}

Truth eval_oracle(const KripkeStructure& K, State w, const StateFormula& f, const OracleOptions& opts,
                  OracleStats* stats) {
  return eval_oracle_all(K, f, opts, stats).at(w);
}

}  // namespace fragmc
