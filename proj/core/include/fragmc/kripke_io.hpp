#pragma once

// Model file formats.
//
//   kripke
//   states: s0 s1 s2
//   trans: s0->s1 s1->s2 s2->s2
//   label: s0: p q
//
// '#' starts a comment. Missing label lines mean empty labels.

#include <string>
#include <string_view>

#include "fragmc/kripke.hpp"

namespace fragmc {

/// Throws ParseError for malformed lines and ModelError for invalid content.
KripkeStructure load_kripke(std::string_view text, Totality mode = Totality::Require);
std::string save_kripke(const KripkeStructure& K);

/// {"states": [...], "trans": [[a, b], ...], "labels": {"s": [...]}}
KripkeStructure kripke_from_json(std::string_view text, Totality mode = Totality::Require);
std::string kripke_to_json(const KripkeStructure& K, int indent = 2);

std::string kripke_to_dot(const KripkeStructure& K);

/// Reads a file as text. Throws std::runtime_error when unreadable.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// Dispatches on content: JSON if the first non-space character is '{'.
KripkeStructure load_kripke_file(const std::string& path, Totality mode = Totality::Require);

}  // namespace fragmc
