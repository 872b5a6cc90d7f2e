#pragma once

#include <vector>

#include "fragmc/kripke.hpp"

namespace fragmc::graph {

std::vector<char> complement(std::vector<char> a);
std::vector<char> meet(std::vector<char> a, const std::vector<char>& b);
std::vector<char> join(std::vector<char> a, const std::vector<char>& b);

/// States lying on a cycle of the subgraph induced by `keep` (all states when
/// empty).
std::vector<char> nontrivial_scc_states(const KripkeStructure& K, const std::vector<char>& keep);

}  // namespace fragmc::graph
