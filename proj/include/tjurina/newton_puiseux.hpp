#pragma once

#include <vector>

#include "tjurina/curve.hpp"
#include "tjurina/mpoly.hpp"

namespace tjurina {

/* Compact boundary of the local Newton polygon. Each edge carries its
 * reduced inclination p/q and the one-variable polynomial psi whose nonzero
 * rational roots are the admissible leading coefficients on that edge. */
struct NewtonPolygon {
    struct Edge {
        long i0, j0, i1, j1;  // endpoints, j0 > j1
        long p, q;            // i1-i0 = g*p, j0-j1 = g*q, gcd(p,q)=1
        long g;
        MPoly psi;            // univariate, exponent = j - j1 along the edge
    };
    std::vector<std::pair<long, long>> support;
    std::vector<Edge> edges;
};

// f must involve X (no pure-Y-axis degeneracies handled here)
NewtonPolygon newton_polygon(const MPoly& f);

/* All branches of f = 0 through the origin, each parametrized by
 * x = t^q (or x = 0 for the vertical branch) and y a series known at least
 * to degree N; series that terminate are certified exact by substitution.
 * Throws irrational_coefficient when a branch needs coefficients outside Q,
 * not_square_free for repeated branches, zero_polynomial, input_error. */
std::vector<Branch> puiseux_branches(const MPoly& f, long N);

}  // namespace tjurina
