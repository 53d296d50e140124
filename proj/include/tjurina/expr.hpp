#pragma once

#include <string>
#include <vector>

#include "tjurina/mpoly.hpp"
#include "tjurina/series.hpp"

namespace tjurina {

/* Arithmetic expression syntax shared by polynomial and series input:
 * integers, rationals p/q, named variables, + - * ^ and parentheses.
 * Multiplication is always explicit; exponents are nonnegative integers. */

MPoly parse_polynomial(const std::string& text, const std::vector<std::string>& vars);

// same grammar with the single variable t; must be a polynomial in t
Series parse_series(const std::string& text);

}  // namespace tjurina
