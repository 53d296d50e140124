#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tjurina/mpoly.hpp"
#include "tjurina/series.hpp"
#include "tjurina/value_vec.hpp"

namespace tjurina {

/* One branch of the germ: a primitive parametrization t -> (x_1(t),...,x_n(t))
 * with every coordinate of order >= 1 (or identically zero). */
struct Branch {
    std::vector<Series> coords;
    std::string label;

    int nvars() const { return static_cast<int>(coords.size()); }
    // orders of the coordinate functions; TOP for a vanishing coordinate
    ValVec coord_orders() const;
    long mult() const;  // min of coord_orders
};

/* A reduced curve germ with r branches. For plane curves we keep (or
 * reconstruct) one defining factor per branch plus the full equation;
 * space curves may carry user-supplied equations instead. */
struct Curve {
    int nvars = 2;
    std::vector<Branch> branches;
    std::vector<MPoly> factors;        // per branch; empty when unavailable
    std::optional<MPoly> poly;         // product equation (plane)
    std::vector<MPoly> equations;      // implicit equations for n > 2 input
    bool transversal = false;          // v(x_1) is the multiplicity on every branch

    int r() const { return static_cast<int>(branches.size()); }
    bool plane() const { return nvars == 2; }

    // v_i(x_l) matrix, rows by branch
    std::vector<ValVec> value_matrix() const;
};

// checks orders, primitivity and pairwise distinctness; throws input_error
void validate_branches(const std::vector<Branch>& branches);

// (ord_i g(branch_i))_i with TOP for zero-to-truncation evaluations
ValVec value_of_function(const Curve& c, const MPoly& g);

/* Pullbacks of the coordinate differentials: entry l is the r-tuple
 * ( d/dt(x_l on branch i) * t )_i, the image of dx_l. */
std::vector<std::vector<Series>> differential_images(const Curve& c);

// ord_t of factor j pulled back to branch k (j != k); throws non_finite
// when the pullback vanishes identically, missing_factor without factors
long intersection_multiplicity(const Curve& c, int j, int k);

/* Smallest-degree polynomial annihilating the branch, found by linear
 * algebra on coefficient windows. Exact when the branch is exact. */
MPoly reconstruct_factor(const Branch& b);

// does v(x_1) equal the multiplicity on every branch?
bool first_coordinate_transversal(const Curve& c);

/* Plane curves only: replace x by x + lambda*y (branches, factors, poly)
 * with a small lambda that makes the first coordinate transversal. */
Curve make_transversal_plane(const Curve& c);

}  // namespace tjurina
