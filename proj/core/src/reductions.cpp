#include "fragmc/reductions.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

#include "fragmc/errors.hpp"
#include "fragmc/syntax.hpp"

namespace fragmc {
namespace {

std::string d(int j) { return "d_" + std::to_string(j); }

// D_i: disjunction of d_j for j in 0..top, j != i.
StateFormula all_d_but(int i, int top) {
  std::vector<StateFormula> out;
  for (int j = 0; j <= top; ++j)
    if (j != i) out.push_back(atom(d(j)));
  return disj_all(out);
}

HardnessInstance finish(KripkeBuilder& b, const std::string& start, StateFormula f, bool expected,
                        const std::string& generator, const std::string& source) {
  HardnessInstance h{b.build(), 0, std::move(f), expected, {generator, fnv1a_hex(source), false}, {}};
  h.start = h.structure.at(start);
  return h;
}

// Game nodes as states, leaves loop, t on accepting leaves.
KripkeBuilder game_structure(const AlternatingGame& g, bool depth_props) {
  KripkeBuilder b;
  b.declare_prop("t");
  for (std::size_t v = 0; v < g.size(); ++v) {
    b.add_state(g.names[v]);
    if (depth_props) b.add_label(g.names[v], d(g.level[v]));
    if (g.accepting[v]) b.add_label(g.names[v], "t");
  }
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (g.succ[v].empty()) b.add_transition(g.names[v], g.names[v]);
    for (int w : g.succ[v]) b.add_transition(g.names[v], g.names[w]);
  }
  return b;
}

}  // namespace

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---- games ----

HardnessInstance gen_game_ax_ex(const AlternatingGame& g) {
  const bool value = game_value(g);
  KripkeBuilder b = game_structure(g, false);
  StateFormula f = atom("t");
  for (int i = g.depth; i >= 1; --i) f = g.universal_level(i - 1) ? AX(f) : EX(f);
  return finish(b, g.names[0], f, value, "game-ax-ex", game_to_json(g));
}

HardnessInstance gen_game_af_eg(const AlternatingGame& g) {
  const bool value = game_value(g);
  KripkeBuilder b = game_structure(g, true);
  StateFormula f = atom("t");
  for (int i = g.depth; i >= 1; --i)
    f = g.universal_level(i - 1) ? AF(conj(atom(d(i)), f)) : EG(disj(all_d_but(i, g.depth), f));
  return finish(b, g.names[0], f, value, "game-af-eg", game_to_json(g));
}

// States (v, l) for layers l = 1..q+1. A universal node u on level k-1 with
// successors a, b sends every copy to (a, L_u); then (a, L_u) -> r_u ->
// (b, q+1) -> z_k, where L_u is u's 1-based index and z_k a looping trap.
// Relays and traps carry {z_k, d_{k+1}}, universal copies carry u_{k-1}.
HardnessInstance gen_game_eg_only(const AlternatingGame& g) {
  const bool value = game_value(g);
  const int q = static_cast<int>(g.size());
  const int p = g.depth;
  auto copy = [&](int v, int layer) { return g.names[v] + "@" + std::to_string(layer); };
  auto relay = [&](int u) { return "r_" + g.names[u]; };
  auto trap = [](int k) { return "z_" + std::to_string(k); };

  KripkeBuilder b;
  b.declare_prop("t");
  for (int layer = 1; layer <= q + 1; ++layer) {
    for (int v = 0; v < q; ++v) {
      const std::string s = copy(v, layer);
      b.add_state(s);
      b.add_label(s, "l_" + std::to_string(layer));
      b.add_label(s, d(g.level[v]));
      if (g.accepting[v]) b.add_label(s, "t");
      if (g.level[v] < p && g.universal(v)) b.add_label(s, "u_" + std::to_string(g.level[v]));
    }
  }
  std::vector<char> has_series(static_cast<std::size_t>(q) * (q + 2), 0);
  auto series = [&](int v, int layer) -> char& { return has_series[static_cast<std::size_t>(v) * (q + 2) + layer]; };
  for (int k = 1; k <= p; ++k) {
    if (!g.universal_level(k - 1)) continue;
    b.add_state(trap(k));
    b.add_label(trap(k), trap(k));
    b.add_label(trap(k), d(k + 1));
    b.add_transition(trap(k), trap(k));
  }
  for (int u = 0; u < q; ++u) {
    if (g.level[u] == p || !g.universal(u)) continue;
    const int k = g.level[u] + 1, a = g.succ[u][0], c = g.succ[u][1];
    b.add_state(relay(u));
    b.add_label(relay(u), trap(k));
    b.add_label(relay(u), d(k + 1));
    b.add_transition(copy(a, u + 1), relay(u));
    b.add_transition(relay(u), copy(c, q + 1));
    b.add_transition(copy(c, q + 1), trap(k));
    series(a, u + 1) = 1;
    series(c, q + 1) = 1;
  }
  for (int layer = 1; layer <= q + 1; ++layer) {
    for (int v = 0; v < q; ++v) {
      if (g.level[v] == p) {
        if (!series(v, layer)) b.add_transition(copy(v, layer), copy(v, layer));
      } else if (g.universal(v)) {
        b.add_transition(copy(v, layer), copy(g.succ[v][0], v + 1));
      } else {
        for (int w : g.succ[v]) b.add_transition(copy(v, layer), copy(w, layer));
      }
    }
  }

  StateFormula f = atom("t");
  for (int k = p; k >= 1; --k) {
    if (g.universal_level(k - 1))
      f = EG(disj_all({atom("u_" + std::to_string(k - 1)), conj(atom(d(k)), f), atom(trap(k))}));
    else
      f = EG(disj(all_d_but(k, p + 1), f));
  }
  return finish(b, copy(0, 1), f, value, "game-eg", game_to_json(g));
}

// ---- circuits ----

namespace {

enum class CircuitOp { EX, EF };

std::string copy_name(const MonotoneCircuit& c, int v, int i) {
  const auto& g = c.gates[v];
  return g.kind == GateKind::And ? g.id : g.id + "^" + std::to_string(i);
}

KripkeBuilder circuit_structure(const MonotoneCircuit& c, const std::vector<bool>& x, bool depth_props) {
  KripkeBuilder b;
  for (const char* p : {"1", "2", "t"}) b.declare_prop(p);
  const int n = static_cast<int>(c.gates.size());
  for (int v = 0; v < n; ++v) {
    const auto& g = c.gates[v];
    const int copies = g.kind == GateKind::And ? 1 : 2;
    for (int i = 1; i <= copies; ++i) {
      const std::string s = copy_name(c, v, i);
      b.add_state(s);
      if (g.kind != GateKind::And) b.add_label(s, std::to_string(i));
      if (g.kind == GateKind::Input && x[g.var - 1] != g.negated) b.add_label(s, "t");
      if (depth_props) b.add_label(s, d(g.layer));
    }
  }
  for (int v = 0; v < n; ++v) {
    const auto& g = c.gates[v];
    switch (g.kind) {
      case GateKind::Input:
        for (int i = 1; i <= 2; ++i) b.add_transition(copy_name(c, v, i), copy_name(c, v, i));
        break;
      case GateKind::And:
        for (int k = 0; k < 2; ++k) b.add_transition(g.id, copy_name(c, g.preds[k], k + 1));
        break;
      case GateKind::Or:
        for (int i = 1; i <= 2; ++i)
          for (int u : g.preds) b.add_transition(copy_name(c, v, i), copy_name(c, u, i));
        break;
    }
  }
  return b;
}

StateFormula circuit_formula(int depth, CircuitOp op) {
  StateFormula f = atom("t");
  for (int i = depth - 1; i >= 0; --i) {
    if (op == CircuitOp::EX) {
      f = i % 2 == 0 ? EX(f) : conj(EX(conj(atom("1"), f)), EX(conj(atom("2"), f)));
    } else {
      const StateFormula di = atom(d(i + 1));
      f = i % 2 == 0 ? EF(conj(di, f))
                     : conj(EF(conj_all({di, atom("1"), f})), EF(conj_all({di, atom("2"), f})));
    }
  }
  return f;
}

std::string circuit_source(const MonotoneCircuit& c, const std::vector<bool>& x) {
  std::string s = netlist_to_string(c) + "x ";
  for (bool bit : x) s += bit ? '1' : '0';
  return s + "\n";
}

}  // namespace

HardnessInstance gen_circuit_ex(const MonotoneCircuit& c, const std::vector<bool>& x) {
  const bool value = circuit_value(c, x);
  KripkeBuilder b = circuit_structure(c, x, false);
  return finish(b, copy_name(c, c.output, 1), circuit_formula(c.depth, CircuitOp::EX), value, "circuit-ex",
                circuit_source(c, x));
}

HardnessInstance gen_circuit_ef(const MonotoneCircuit& c, const std::vector<bool>& x) {
  const bool value = circuit_value(c, x);
  KripkeBuilder b = circuit_structure(c, x, true);
  return finish(b, copy_name(c, c.output, 1), circuit_formula(c.depth, CircuitOp::EF), value, "circuit-ef",
                circuit_source(c, x));
}

HardnessInstance gen_circuit_ax(const MonotoneCircuit& c, const std::vector<bool>& x) {
  HardnessInstance h = gen_circuit_ex(c, x);
  auto [K, f] = elim_atomic_negation(h.structure, to_nnf(negate(h.formula)));
  h.structure = std::move(K);
  h.formula = std::move(f);
  h.expected = !h.expected;
  h.provenance.generator = "circuit-ax";
  return h;
}

// ---- 3CNF ----

namespace {

std::string lit_atom(int l) { return (l > 0 ? "x" : "xb") + std::to_string(std::abs(l)); }

KripkeBuilder diamond(int m) {
  KripkeBuilder b;
  auto add = [&](const std::string& s) {
    b.add_state(s);
    b.add_label(s, s);
  };
  add("y0");
  for (int i = 1; i <= m; ++i) {
    for (const std::string& s : {"x" + std::to_string(i), "xb" + std::to_string(i), "y" + std::to_string(i)}) add(s);
    const std::string prev = "y" + std::to_string(i - 1), y = "y" + std::to_string(i);
    for (const std::string& mid : {"x" + std::to_string(i), "xb" + std::to_string(i)}) {
      b.add_transition(prev, mid);
      b.add_transition(mid, y);
    }
  }
  const std::string last = "y" + std::to_string(m);
  b.add_transition(last, last);
  return b;
}

void check_cnf(const Cnf& f) {
  for (const auto& c : f.clauses) {
    if (c.size() != 3) throw SourceError("every clause needs exactly three literal slots");
    for (int l : c)
      if (l == 0 || std::abs(l) > f.vars) throw SourceError("literal " + std::to_string(l) + " out of range");
  }
}

}  // namespace

HardnessInstance gen_3cnf_ctlplus_eg(const Cnf& f) {
  check_cnf(f);
  KripkeBuilder b = diamond(f.vars);
  std::vector<std::string> phi{"y0"};
  for (int i = 1; i <= f.vars; ++i)
    for (const std::string& s : {"y" + std::to_string(i), "x" + std::to_string(i), "xb" + std::to_string(i)})
      phi.push_back(s);
  std::vector<PathFormula> clauses;
  for (const auto& c : f.clauses) {
    std::vector<PathFormula> lits;
    for (int l : c) {
      std::vector<StateFormula> rest;
      for (const auto& a : phi)
        if (a != lit_atom(-l)) rest.push_back(atom(a));
      lits.push_back(always(embed(disj_all(rest))));
    }
    clauses.push_back(disj_all(lits));
  }
  return finish(b, "y0", exists(conj_all(clauses)), satisfiable(f), "3cnf-eg", cnf_to_dimacs(f));
}

HardnessInstance gen_3cnf_ctlplus_ef(const Cnf& f) {
  check_cnf(f);
  KripkeBuilder b = diamond(f.vars);
  std::vector<PathFormula> clauses;
  for (const auto& c : f.clauses) {
    std::vector<PathFormula> lits;
    for (int l : c) lits.push_back(eventually(embed(atom(lit_atom(l)))));
    clauses.push_back(disj_all(lits));
  }
  HardnessInstance h = finish(b, "y0", exists(conj_all(clauses)), satisfiable(f), "3cnf-ef", cnf_to_dimacs(f));
  h.provenance.reconstructed = true;
  return h;
}

// ---- ECTL lift ----

HardnessInstance to_ectl_instance(const HardnessInstance& h) {
  HardnessInstance out = h;
  out.provenance.generator = "ectl-lift(" + h.provenance.generator + ")";
  if (!has_future_or_globally(h.formula)) {
    out.warnings.push_back("formula has no F or G to substitute; instance passed through unchanged");
    return out;
  }
  out.structure = reflexive_closure(h.structure);
  out.start = out.structure.at(h.structure.name(h.start));
  out.formula = lift_to_ectl(h.formula);
  return out;
}

}  // namespace fragmc
