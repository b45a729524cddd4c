#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ffmc/formula.hpp"

namespace ffmc {

/// Reads the line format:
///
///     field 5                       # or: field 2^2 mod a^2+a+1, field 9
///     vars x1 x2
///     clause x1^2 - 1 = 0
///     clause x1*x2 - x2 - 1 = 0 | x1 != 0
///
/// Errors carry "line L, column C" in their message. A bare `clause` line is the empty clause.
Formula parse_formula(std::string_view text);

/// One polynomial over `field`; variables are looked up in `names`, or read as x<i>
/// when `names` is empty.
Polynomial parse_polynomial(const FieldPtr& field, std::string_view text, const std::vector<std::string>& names = {});

/// One constraint `poly = 0` or `poly != 0`.
Constraint parse_constraint(const FieldPtr& field, std::string_view text, const std::vector<std::string>& names = {});

}  // namespace ffmc
