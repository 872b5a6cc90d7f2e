#pragma once

// Random and exhaustive reduction sources plus independent evaluators.

#include <functional>

#include "fragmc/reductions.hpp"
#include "support.hpp"

namespace fragmc::fx {

/// Random leveled alternating game with depth in [1, max_depth] and at most
/// max_nodes nodes. Universal nodes get two distinct successors.
AlternatingGame random_game(Rng& rng, int max_depth, int max_nodes);

/// Game value by top-down recursion from the root.
bool ref_game_value(const AlternatingGame& g);

/// Every leveled alternating circuit with at most max_gates gates (inputs
/// included) and at most max_inputs input gates, each input reading its own
/// variable with either polarity. AND predecessor pairs are ordered and may
/// repeat a gate; every gate feeds the output.
void enumerate_circuits(int max_gates, int max_inputs, const std::function<void(const MonotoneCircuit&)>& visit);

/// Circuit value by recursion from the output.
bool ref_circuit_value(const MonotoneCircuit& c, const std::vector<bool>& x);

/// Every 3CNF over exactly `vars` variables with 1..max_clauses clauses,
/// clauses as sorted literal multisets and the clause list as a multiset.
void enumerate_3cnf(int vars, int max_clauses, const std::function<void(const Cnf&)>& visit);

bool ref_satisfiable(const Cnf& f);

/// All bit vectors of length n.
std::vector<std::vector<bool>> all_inputs(int n);

}  // namespace fragmc::fx
