#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tjurina/combinatorics.hpp"
#include "tjurina/curve.hpp"
#include "tjurina/value_sets.hpp"

namespace tjurina {

struct AnalysisOptions {
    long box_slack = 2;       // padding beyond the predicted conductor
    int max_box_retries = 3;  // window growth attempts before giving up
    bool run_additive = true; // partition cross-checks (plane curves)
};

/* Per-branch numbers: the semigroup of values, the values of differentials,
 * the gap count delta, the semigroup conductor, the count of differential
 * values outside the semigroup, and conductor minus that count (the branch
 * Tjurina number when the branch is a complete intersection). */
struct BranchSummary {
    std::vector<long> semigroup;
    std::vector<long> diff_values;
    long delta = 0;
    long conductor = 0;
    long nonexact = 0;
    long tjurina = 0;
};

struct NamedCheck {
    std::string name;
    bool pass = false;
    std::string details;
};

struct InvariantReport {
    int r = 0;
    bool plane = false;
    bool ci_conditional = false;  // global formula assumes a complete intersection
    std::vector<BranchSummary> branches;
    std::vector<std::vector<long>> intersection;  // pairwise multiplicities, 0 diagonal
    ValueSet gamma;               // value semigroup of the curve
    ValueSet lambda;              // values of Kahler differentials
    Maximals lambda_maximals;
    std::vector<long> theta_values;
    long delta_value = 0;
    long delta_plane_value = -1;     // gap/intersection form; -1 when unavailable
    long tjurina_value = 0;          // delta + sum(delta_i - nonexact_i + theta_i)
    long tjurina_plane_value = -1;   // sum(tau_i) + sum I_ij + sum theta_i
    long tjurina_special_value = -1; // two or three branch display
    std::vector<NamedCheck> checks;

    bool all_checks_pass() const;
};

BranchSummary branch_invariants(const Curve& c, int i, const AnalysisOptions& opt = {});

// full-curve windows sized from branch conductors and intersection data,
// grown on demand when a conductor cannot be certified
ValueSet curve_semigroup(const Curve& c, const AnalysisOptions& opt = {});
ValueSet curve_differential_values(const Curve& c, const AnalysisOptions& opt = {});

long delta_via_recursion(const Curve& c, const AnalysisOptions& opt = {});
long delta_plane(const Curve& c, const AnalysisOptions& opt = {});

long tjurina_main(const Curve& c, const AnalysisOptions& opt = {});
long tjurina_plane(const Curve& c, const AnalysisOptions& opt = {});
long tjurina_r2(const Curve& c, const AnalysisOptions& opt = {});
long tjurina_r3(const Curve& c, const AnalysisOptions& opt = {});

// both sides of the partition formula for J against its complement
std::pair<long, long> additive_check(const Curve& c, const std::vector<int>& J,
                                     const AnalysisOptions& opt = {});

InvariantReport analyze(const Curve& c, const AnalysisOptions& opt = {});

}  // namespace tjurina
