#pragma once

#include <stdexcept>
#include <string>

namespace tjurina {

/* Every failure mode gets its own type so callers (and the CLI exit-code
 * mapping) can tell input problems from math preconditions apart. */

struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct math_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// parse failure; keeps 1-based position for diagnostics
struct syntax_error : input_error {
    int line, col;
    syntax_error(const std::string& msg, int line_, int col_)
        : input_error(msg + " at line " + std::to_string(line_) + ", col " + std::to_string(col_)),
          line(line_), col(col_) {}
};

struct unknown_variable : input_error {
    using input_error::input_error;
};

struct zero_polynomial : input_error {
    using input_error::input_error;
};

struct wrong_branch_count : input_error {
    using input_error::input_error;
};

// a coefficient needed for a branch expansion does not lie in Q
struct irrational_coefficient : math_error {
    using math_error::math_error;
};

struct not_square_free : math_error {
    using math_error::math_error;
};

// a series coefficient beyond the stored truncation was required
struct truncation_too_small : math_error {
    using math_error::math_error;
};

// two branches share a component, so an intersection number is infinite
struct non_finite : math_error {
    using math_error::math_error;
};

struct not_transversal : math_error {
    using math_error::math_error;
};

struct missing_factor : math_error {
    using math_error::math_error;
};

// no conductor could be certified inside the (already enlarged) window
struct no_conductor_in_window : math_error {
    using math_error::math_error;
};

struct gamma_too_small : math_error {
    using math_error::math_error;
};

// colength window kept growing without stabilizing
struct non_isolated : math_error {
    using math_error::math_error;
};

}  // namespace tjurina
