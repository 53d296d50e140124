#pragma once

#include <string>
#include <vector>

#include "tjurina/series.hpp"

namespace tjurina {

/* Value vectors live in (N u {TOP})^r. TOP stands for "infinite or clipped
 * at the window"; it compares above every finite entry and is absorbing
 * under addition. */
using ValVec = std::vector<long>;

constexpr long kTop = Series::kOrdTop;

inline bool is_top(long v) { return v >= kTop; }

inline long val_add(long a, long b) { return (is_top(a) || is_top(b)) ? kTop : a + b; }

inline bool vv_leq(const ValVec& a, const ValVec& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (!(is_top(b[i]) || (!is_top(a[i]) && a[i] <= b[i]))) return false;
    return true;
}

inline bool vv_lt_strict(const ValVec& a, const ValVec& b) {  // every coordinate strictly up
    for (size_t i = 0; i < a.size(); ++i)
        if (!(is_top(b[i]) && !is_top(a[i])) && !(a[i] < b[i])) return false;
    return true;
}

inline ValVec vv_min(const ValVec& a, const ValVec& b) {
    ValVec m(a.size());
    for (size_t i = 0; i < a.size(); ++i) m[i] = std::min(a[i], b[i]);
    return m;
}

inline std::string vv_str(const ValVec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += is_top(v[i]) ? "TOP" : std::to_string(v[i]);
    }
    return s + ")";
}

}  // namespace tjurina
