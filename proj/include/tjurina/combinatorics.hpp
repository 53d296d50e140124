#pragma once

#include <vector>

#include "tjurina/value_sets.hpp"
#include "tjurina/value_vec.hpp"

namespace tjurina {

/* Elements of E agreeing with alpha on the axes in J and strictly above it
 * everywhere else. J holds 0-based axis indices. */
std::vector<ValVec> fiber(const ValueSet& E, const std::vector<int>& J, const ValVec& alpha);

struct Maximals {
    std::vector<ValVec> M;   // no axis fiber over the point
    std::vector<ValVec> RM;  // maximal, every fiber over >= 2 axes nonempty
    std::vector<ValVec> AM;  // maximal, every proper fiber empty
};

// all maximal points lie between inf(E) and conductor(E); empty for one axis
Maximals maximal_points(const ValueSet& E);

/* theta[i] counts the distinct i-th coordinates of relative maximals over
 * every projection of E onto a tail-anchored axis subset {.., i}; theta[0]
 * is always zero. These are the correction terms of the length formula. */
std::vector<long> theta(const ValueSet& E);

/* Codimension of the part of E lying below gamma, computed from axis counts
 * minus the theta corrections. Valid for gamma at or above the conductor;
 * throws gamma_too_small below it. */
long quotient_length(const ValueSet& E, const ValVec& gamma);

}  // namespace tjurina
