#pragma once

// Random instances and naive reference implementations shared by the tests.
// Nothing here calls into the engines or the core oracle.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fragmc/formula.hpp"
#include "fragmc/kripke.hpp"
#include "fragmc/syntax.hpp"

namespace fragmc::fx {

using Rng = std::mt19937_64;

/// n states named s0.., out-degree 1..max_out, each prop true with prob 1/2.
KripkeStructure random_kripke(Rng& rng, std::size_t n, const std::vector<std::string>& props,
                              std::size_t max_out = 2);

struct GenOptions {
  // CTL/ECTL: paired tokens to draw from ("EX", "AU", "EFi", ...).
  // Plus families: separate temporal tokens ("X", "F", ..., "Gi").
  std::vector<std::string> ops;
  bool plus = false;
  std::vector<std::string> quantifiers{"E", "A"};  // plus families only
  Discipline discipline = Discipline::Full;
  int depth = 3;  // nesting of quantifiers
  std::vector<std::string> atoms{"p", "q", "r"};
  int path_depth = 2;  // Boolean/X nesting inside a plus body
};

StateFormula random_formula(Rng& rng, const GenOptions& opts);

/// Reflexive-transitive closure by Floyd-Warshall.
std::vector<std::vector<char>> naive_reach(const KripkeStructure& K);

/// chi on prefix . cycle^omega, by fixpoints over the finite position graph.
/// `truth[s][k]` answers the k-th embedded formula at state s through `embed`.
bool naive_on_lasso(const KripkeStructure& K, const std::vector<State>& prefix, const std::vector<State>& cycle,
                    const PathFormula& chi, const std::function<bool(const StateFormula&, State)>& embed);

/// Some lasso of total length <= max_len from each state satisfies chi.
std::vector<char> naive_exists(const KripkeStructure& K, const PathFormula& chi, std::size_t max_len,
                               const std::function<bool(const StateFormula&, State)>& embed);

/// Full semantics with quantifiers decided by lasso enumeration up to max_len.
/// Exact when max_len exceeds the longest minimal witness, which holds for the
/// tiny structures and formulas the tests feed it.
std::vector<char> naive_eval(const KripkeStructure& K, const StateFormula& f, std::size_t max_len);

}  // namespace fragmc::fx
