#pragma once

// Hardness-instance generators. Every instance carries an expected truth value
// computed from its source object (game value, circuit value, satisfiability).

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fragmc/formula.hpp"
#include "fragmc/kripke.hpp"

namespace fragmc {

// ---- source objects ----

/// Leveled AND/OR game. Level 0 holds the root; level j is universal iff
/// root_universal differs from (j odd). Leaves live on the last level.
struct AlternatingGame {
  bool root_universal = false;
  std::vector<std::string> names;
  std::vector<int> level;
  std::vector<std::vector<int>> succ;  // ordered; universal nodes have two
  std::vector<char> accepting;         // only meaningful on leaves
  int depth = 0;                       // p, the last level

  std::size_t size() const { return names.size(); }
  bool universal_level(int j) const { return root_universal != (j % 2 == 1); }
  bool universal(int node) const { return universal_level(level[node]); }
};

/// Throws SourceError unless the game is strictly leveled and alternating,
/// node 0 is the only level-0 node, nodes above the last level have
/// successors, universal nodes have exactly two distinct ones, and leaves sit
/// on the last level.
void validate_game(const AlternatingGame& g);
bool game_value(const AlternatingGame& g);

/// {"root_polarity": "exists"|"forall", "levels": [["r"], ["a","b"], ...],
///  "edges": {"r": ["a","b"], ...}, "accepting": ["a"]}
AlternatingGame parse_game_json(const std::string& text);
std::string game_to_json(const AlternatingGame& g);

enum class GateKind { Input, And, Or };

struct CircuitGate {
  std::string id;
  GateKind kind = GateKind::Input;
  int layer = 0;
  std::vector<int> preds;  // gate indices on layer + 1, ordered
  int var = 0;             // inputs: 1-based variable
  bool negated = false;    // inputs: literal polarity
};

/// Leveled circuit: layer 0 is the OR output, even layers OR, odd layers AND
/// with fan-in two, literal gates on the input layer `depth`.
struct MonotoneCircuit {
  std::vector<CircuitGate> gates;
  int output = 0;
  int depth = 0;
  int vars = 0;
};

/// Throws SourceError on a broken layering, fan-in, or a gate that does not
/// feed the output.
void validate_circuit(const MonotoneCircuit& c);
/// x[k-1] is the value of variable k.
bool circuit_value(const MonotoneCircuit& c, const std::vector<bool>& x);

/// Netlist lines, '#' comments:
///   gate <id> <layer> AND|OR <pred...>
///   input <id> [<var>] [neg]
/// A missing var opens a fresh variable. Inputs sit one layer below the
/// deepest gate.
MonotoneCircuit parse_netlist(const std::string& text);
std::string netlist_to_string(const MonotoneCircuit& c);

/// Clauses of literals +k / -k over variables 1..vars.
struct Cnf {
  int vars = 0;
  std::vector<std::vector<int>> clauses;
};

/// DIMACS CNF. Clauses with fewer than three literals are padded by repeating
/// the last one; empty clauses, longer clauses and out-of-range variables are
/// SourceErrors.
Cnf parse_dimacs(const std::string& text);
std::string cnf_to_dimacs(const Cnf& f);
bool satisfiable(const Cnf& f);

// ---- instances ----

struct Provenance {
  std::string generator;
  std::string digest;  // FNV-1a 64 of the canonical source text, hex
  bool reconstructed = false;
};

struct HardnessInstance {
  KripkeStructure structure;
  State start = 0;
  StateFormula formula = top();
  bool expected = false;
  Provenance provenance;
  std::vector<std::string> warnings;
};

std::string fnv1a_hex(const std::string& data);

HardnessInstance gen_game_ax_ex(const AlternatingGame& g);
HardnessInstance gen_game_af_eg(const AlternatingGame& g);
/// Layered EG-only construction with series-connected copies for universal
/// steps; see README for the routing.
HardnessInstance gen_game_eg_only(const AlternatingGame& g);

HardnessInstance gen_circuit_ex(const MonotoneCircuit& c, const std::vector<bool>& x);
HardnessInstance gen_circuit_ef(const MonotoneCircuit& c, const std::vector<bool>& x);
/// Expected value is the complement of C(x).
HardnessInstance gen_circuit_ax(const MonotoneCircuit& c, const std::vector<bool>& x);

HardnessInstance gen_3cnf_ctlplus_eg(const Cnf& f);
/// Formula shape E /\_i \/_j F l_ij; flagged as reconstructed.
HardnessInstance gen_3cnf_ctlplus_ef(const Cnf& f);

/// Reflexive closure plus F -> Fi, G -> Gi. Without F or G the instance is
/// returned unchanged with a warning.
HardnessInstance to_ectl_instance(const HardnessInstance& h);

// ---- SNSAT formula builders ----

struct SnsatLiteral {
  std::string var;  // "x3" or "z2"
  bool negated = false;
};

/// phi[i-1] is the CNF of the i-th formula.
struct SnsatSpec {
  int n = 0;
  std::vector<std::vector<std::vector<SnsatLiteral>>> phi;
};

/// {"n": 2, "phi": [[["x1", "~z1", "z2"]], [["~x1", "z3", "z3"]]]}
SnsatSpec parse_snsat_json(const std::string& text);

/// psi[k] and psi'[k] for 0 <= k <= max_k (default 2n-1). For odd k, psi'[k]
/// is the positive rewrite of psi[k]; for even k >= 2 it rewrites ~psi[k].
std::pair<std::vector<StateFormula>, std::vector<StateFormula>> build_snsat_psi(const SnsatSpec& spec,
                                                                                 int max_k = -1);

// ---- bundles ----

/// Writes model.kripke, formula.ctl and manifest.json into dir (created).
void write_bundle(const std::string& dir, const HardnessInstance& h);
/// Throws ModelError / ParseError on unreadable bundles.
HardnessInstance read_bundle(const std::string& dir);

}  // namespace fragmc
