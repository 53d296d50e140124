#pragma once

#include <string>
#include <vector>

#include "tjurina/curve.hpp"
#include "tjurina/mpoly.hpp"
#include "tjurina/series.hpp"

namespace tjurina {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string details;
};

/* Colength of (f, f_X, f_Y) in Q[[x,y]], computed independently of the
 * value-set pipeline: echelon over the monomials of degree < D gives
 * dim O/(J + m^D); once three consecutive windows agree the dimension has
 * stabilized (Nakayama on (m^D + J)/J) and equals the colength.
 * The window seed doubles at most twice before giving up. */
long tjurina_direct(const MPoly& f);

/* Bordered jacobian determinant det[grad f_1; ...; grad f_{n-1}; grad g]
 * pulled back to each branch. eqs must have n-1 entries. */
std::vector<Series> dee_operator(const Curve& c, const MPoly& g,
                                 const std::vector<MPoly>& eqs);

/* Is omega = sum g_l dx_l a torsion differential? Decided by the same
 * determinant with (g_1,...,g_n) as the bottom row: torsion iff it vanishes
 * on every branch. Throws truncation_too_small when a branch evaluation is
 * zero to truncation but not provably zero. */
bool torsion_test(const Curve& c, const std::vector<MPoly>& omega,
                  const std::vector<MPoly>& eqs);

/* ord_i(f_Y on branch i) = c_i + v_i(x) - 1 and symmetrically for f_X,
 * where c_i is the conductor coordinate of the whole curve. Plane curves
 * with factors only; first coordinate must be transversal. */
CheckResult piene_check(const Curve& c);

/* The jacobian ideal value set equals {lambda + c - e} within the window. */
CheckResult pol_identity_check(const Curve& c);

}  // namespace tjurina
