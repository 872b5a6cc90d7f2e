#pragma once

#include <string_view>

#include "fragmc/errors.hpp"
#include "fragmc/formula.hpp"

namespace fragmc {

/// Parses the concrete formula syntax. Throws ParseError.
///
///   state := true | false | atom | ~state | state & state | state | state
///          | (state) | quant path
///   path  := X path | F path | G path | Fi path | Gi path
///          | [path U path] | [path R path] | ~path | path & path
///          | path | path | (path) | state
///
/// Paired operators (AX, EFi, ...) may be written adjacent. & binds tighter
/// than |, prefix operators bind tightest.
StateFormula parse_formula(std::string_view text);

}  // namespace fragmc
