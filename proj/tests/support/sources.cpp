#include "sources.hpp"

#include <algorithm>
#include <numeric>

namespace fragmc::fx {

AlternatingGame random_game(Rng& rng, int max_depth, int max_nodes) {
  for (;;) {
    AlternatingGame g;
    g.root_universal = rng() % 2 == 0;
    g.depth = 1 + static_cast<int>(rng() % max_depth);
    std::vector<std::vector<int>> levels{{0}};
    g.names.push_back("n0");
    g.level.push_back(0);
    bool ok = true;
    for (int j = 1; j <= g.depth && ok; ++j) {
      const int lo = g.universal_level(j - 1) ? 2 : 1;
      const int room = max_nodes - static_cast<int>(g.names.size());
      if (room < lo) {
        ok = false;
        break;
      }
      const int cap = std::min(room, 4);
      const int size = lo + static_cast<int>(rng() % (cap - lo + 1));
      levels.emplace_back();
      for (int k = 0; k < size; ++k) {
        levels.back().push_back(static_cast<int>(g.names.size()));
        g.names.push_back("n" + std::to_string(g.names.size()));
        g.level.push_back(j);
      }
    }
    if (!ok) continue;
    g.succ.assign(g.names.size(), {});
    g.accepting.assign(g.names.size(), 0);
    for (int j = 0; j < g.depth; ++j) {
      std::vector<int> next = levels[j + 1];
      for (int v : levels[j]) {
        std::shuffle(next.begin(), next.end(), rng);
        std::size_t count = g.universal(v) ? 2 : 1 + rng() % next.size();
        g.succ[v].assign(next.begin(), next.begin() + count);
      }
    }
    for (int v : levels.back()) g.accepting[v] = rng() % 2;
    return g;
  }
}

namespace {

bool game_rec(const AlternatingGame& g, int v) {
  if (g.level[v] == g.depth) return g.accepting[v];
  bool any = false, all = true;
  for (int w : g.succ[v]) {
    const bool b = game_rec(g, w);
    any = any || b;
    all = all && b;
  }
  return g.universal(v) ? all : any;
}

}  // namespace

bool ref_game_value(const AlternatingGame& g) { return game_rec(g, 0); }

namespace {

struct CircuitEnum {
  int max_gates, max_inputs;
  const std::function<void(const MonotoneCircuit&)>& visit;
  std::vector<int> sizes;                            // gates per layer
  std::vector<std::vector<std::vector<int>>> preds;  // [layer][gate] -> indices in layer + 1

  // Choices of predecessors for one gate on layer j reading `below` gates.
  std::vector<std::vector<int>> options(int j, int below) const {
    std::vector<std::vector<int>> out;
    if (j % 2 == 1) {
      for (int a = 0; a < below; ++a)
        for (int b = 0; b < below; ++b) out.push_back({a, b});
    } else {
      for (int mask = 1; mask < (1 << below); ++mask) {
        std::vector<int> s;
        for (int a = 0; a < below; ++a)
          if (mask >> a & 1) s.push_back(a);
        out.push_back(s);
      }
    }
    return out;
  }

  void emit() {
    const int depth = static_cast<int>(sizes.size()) - 1;
    const int inputs = sizes.back();
    for (int pol = 0; pol < (1 << inputs); ++pol) {
      MonotoneCircuit c;
      c.depth = depth;
      c.vars = inputs;
      std::vector<int> base(sizes.size() + 1, 0);
      std::partial_sum(sizes.begin(), sizes.end(), base.begin() + 1);
      for (int j = 0; j <= depth; ++j) {
        for (int k = 0; k < sizes[j]; ++k) {
          CircuitGate g;
          g.id = "g" + std::to_string(j) + "_" + std::to_string(k);
          g.layer = j;
          if (j == depth) {
            g.kind = GateKind::Input;
            g.var = k + 1;
            g.negated = pol >> k & 1;
          } else {
            g.kind = j % 2 == 0 ? GateKind::Or : GateKind::And;
            for (int p : preds[j][k]) g.preds.push_back(base[j + 1] + p);
          }
          c.gates.push_back(g);
        }
      }
      visit(c);
    }
  }

  // Wire layer j gate k, then the rest.
  void wire(int j, int k, std::vector<char>& covered) {
    const int depth = static_cast<int>(sizes.size()) - 1;
    if (j == depth) return emit();
    if (k == sizes[j]) {
      if (std::find(covered.begin(), covered.end(), 0) != covered.end()) return;
      std::vector<char> next(j + 2 <= depth ? sizes[j + 2] : 0, 0);
      return wire(j + 1, 0, next);
    }
    for (const auto& o : options(j, sizes[j + 1])) {
      preds[j][k] = o;
      std::vector<char> saved = covered;
      for (int p : o) covered[p] = 1;
      wire(j, k + 1, covered);
      covered = saved;
    }
  }

  void layers(int used) {
    // sizes holds layers 0..d-1; try closing with an input layer or adding one more gate layer.
    const int room = max_gates - used;
    for (int inputs = 1; inputs <= std::min(room, max_inputs); ++inputs) {
      sizes.push_back(inputs);
      preds.assign(sizes.size(), {});
      for (std::size_t j = 0; j < sizes.size(); ++j) preds[j].assign(sizes[j], {});
      std::vector<char> covered(sizes[1], 0);
      wire(0, 0, covered);
      sizes.pop_back();
    }
    for (int n = 1; n < room; ++n) {
      sizes.push_back(n);
      layers(used + n);
      sizes.pop_back();
    }
  }
};

}  // namespace

void enumerate_circuits(int max_gates, int max_inputs, const std::function<void(const MonotoneCircuit&)>& visit) {
  CircuitEnum e{max_gates, max_inputs, visit, {1}, {}};
  e.layers(1);
}

namespace {

bool circuit_rec(const MonotoneCircuit& c, int v, const std::vector<bool>& x) {
  const auto& g = c.gates[v];
  if (g.kind == GateKind::Input) return x[g.var - 1] != g.negated;
  if (g.kind == GateKind::And) return circuit_rec(c, g.preds[0], x) && circuit_rec(c, g.preds[1], x);
  for (int p : g.preds)
    if (circuit_rec(c, p, x)) return true;
  return false;
}

}  // namespace

bool ref_circuit_value(const MonotoneCircuit& c, const std::vector<bool>& x) { return circuit_rec(c, c.output, x); }

void enumerate_3cnf(int vars, int max_clauses, const std::function<void(const Cnf&)>& visit) {
  std::vector<int> lits;
  for (int v = 1; v <= vars; ++v) lits.insert(lits.end(), {v, -v});
  std::vector<std::vector<int>> triples;
  const int L = static_cast<int>(lits.size());
  for (int a = 0; a < L; ++a)
    for (int b = a; b < L; ++b)
      for (int c = b; c < L; ++c) triples.push_back({lits[a], lits[b], lits[c]});
  const int T = static_cast<int>(triples.size());
  std::vector<int> pick;
  std::function<void(int)> rec = [&](int from) {
    if (!pick.empty()) {
      Cnf f;
      f.vars = vars;
      for (int i : pick) f.clauses.push_back(triples[i]);
      visit(f);
    }
    if (static_cast<int>(pick.size()) == max_clauses) return;
    for (int i = from; i < T; ++i) {
      pick.push_back(i);
      rec(i);
      pick.pop_back();
    }
  };
  rec(0);
}

bool ref_satisfiable(const Cnf& f) {
  std::vector<bool> a(f.vars, false);
  std::function<bool(int)> rec = [&](int k) {
    if (k == f.vars) {
      return std::all_of(f.clauses.begin(), f.clauses.end(), [&](const std::vector<int>& c) {
        return std::any_of(c.begin(), c.end(), [&](int l) { return l > 0 ? a[l - 1] : !a[-l - 1]; });
      });
    }
    a[k] = false;
    if (rec(k + 1)) return true;
    a[k] = true;
    return rec(k + 1);
  };
  return rec(0);
}

std::vector<std::vector<bool>> all_inputs(int n) {
  std::vector<std::vector<bool>> out;
  for (int m = 0; m < (1 << n); ++m) {
    std::vector<bool> x(n);
    for (int k = 0; k < n; ++k) x[k] = m >> k & 1;
    out.push_back(x);
  }
  return out;
}

}  // namespace fragmc::fx
