#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "tjurina/errors.hpp"

namespace tjurina {

/* Exact rational scalar. mpq_class keeps values canonical (reduced,
 * positive denominator), which is exactly the invariant we need. */
using Rat = mpq_class;

inline Rat rat_from_long(long n) { return Rat(static_cast<signed long>(n)); }

// accepts "123", "-4", "7/21" (normalized on the spot)
inline Rat rat_parse(const std::string& s) {
    try {
        Rat q(s);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw input_error("bad rational literal: " + s);
    }
}

inline Rat rat_pow(const Rat& base, unsigned long e) {
    Rat acc(1), b = base;
    while (e) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

inline bool rat_is_zero(const Rat& q) { return sgn(q) == 0; }

}  // namespace tjurina
