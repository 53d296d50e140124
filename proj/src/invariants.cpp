#include "tjurina/invariants.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "tjurina/errors.hpp"

namespace tjurina {

namespace {

std::vector<std::vector<Series>> coord_mults(const Curve& c) {
    std::vector<std::vector<Series>> m(static_cast<size_t>(c.nvars));
    for (int l = 0; l < c.nvars; ++l)
        for (const auto& b : c.branches) m[static_cast<size_t>(l)].push_back(b.coords[static_cast<size_t>(l)]);
    return m;
}

std::vector<Series> unit_gens(int r) {
    return std::vector<Series>(static_cast<size_t>(r), Series::monomial(0, Rat(1), Series::kExact));
}

Curve subcurve(const Curve& c, const std::vector<int>& idx) {
    Curve s;
    s.nvars = c.nvars;
    s.transversal = c.transversal;
    for (int i : idx) {
        s.branches.push_back(c.branches[static_cast<size_t>(i)]);
        if (c.factors.size() == c.branches.size())
            s.factors.push_back(c.factors[static_cast<size_t>(i)]);
    }
    return s;
}

// bootstrap window for a branch on its own: product of extreme orders
long bootstrap_cap(const Branch& b, long slack) {
    long lo = 0, hi = 0;
    for (long o : b.coord_orders()) {
        if (is_top(o)) continue;
        if (lo == 0 || o < lo) lo = o;
        if (o > hi) hi = o;
    }
    if (lo == 0) throw math_error("branch with no finite coordinate order");
    return lo * hi + slack;
}

bool have_factors(const Curve& c) {
    return c.r() >= 1 && c.factors.size() == static_cast<size_t>(c.r());
}

std::vector<std::vector<long>> intersection_matrix(const Curve& c, NamedCheck* sym_check) {
    const int r = c.r();
    std::vector<std::vector<long>> I(static_cast<size_t>(r), std::vector<long>(static_cast<size_t>(r), 0));
    bool sym = true;
    std::string detail;
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            long a = intersection_multiplicity(c, i, j);
            long b = intersection_multiplicity(c, j, i);
            I[static_cast<size_t>(i)][static_cast<size_t>(j)] = a;
            I[static_cast<size_t>(j)][static_cast<size_t>(i)] = b;
            if (a != b) {
                sym = false;
                detail += "I(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")=" +
                          std::to_string(a) + " vs " + std::to_string(b) + "; ";
            }
        }
    if (sym_check) {
        sym_check->name = "intersection_symmetry";
        sym_check->pass = sym;
        sym_check->details = sym ? "both pullback orders agree on every pair" : detail;
    }
    if (!sym) throw math_error("intersection multiplicities disagree between pullback orders");
    return I;
}

/* Window for the whole curve: per branch, its own conductor plus room for
 * every other branch's contact. With factors at hand the intersection
 * numbers give the exact conductor shift; otherwise guess from
 * multiplicities and let the retry loop grow the window. */
ValVec full_box(const Curve& c, const std::vector<long>& branch_conductors,
                const std::vector<std::vector<long>>& I, long grow, long slack) {
    const int r = c.r();
    ValVec box(static_cast<size_t>(r));
    for (int i = 0; i < r; ++i) {
        long extra = 0;
        for (int j = 0; j < r; ++j) {
            if (j == i) continue;
            if (!I.empty())
                extra += I[static_cast<size_t>(i)][static_cast<size_t>(j)];
            else
                extra += 2 * c.branches[static_cast<size_t>(i)].mult() *
                         c.branches[static_cast<size_t>(j)].mult();
        }
        box[static_cast<size_t>(i)] = branch_conductors[static_cast<size_t>(i)] + extra * grow + slack;
    }
    return box;
}

struct CurveSets {
    ValueSet gamma;
    ValueSet lambda;
};

CurveSets build_sets(const Curve& c, const std::vector<long>& branch_conductors,
                     const std::vector<std::vector<long>>& I, const AnalysisOptions& opt) {
    auto mults = coord_mults(c);
    auto diff = differential_images(c);
    for (int attempt = 0;; ++attempt) {
        ValVec box = full_box(c, branch_conductors, I, 1L << attempt, opt.box_slack);
        try {
            CurveSets out;
            out.gamma = compute_value_set(mults, {unit_gens(c.r())}, box);
            out.gamma.conductor();
            out.lambda = compute_value_set(mults, diff, box);
            out.lambda.conductor();
            return out;
        } catch (const no_conductor_in_window&) {
            if (attempt + 1 >= opt.max_box_retries) throw;
        }
    }
}

std::vector<long> branch_conductors(const Curve& c, const AnalysisOptions& opt) {
    std::vector<long> cs;
    for (int i = 0; i < c.r(); ++i) cs.push_back(branch_invariants(c, i, opt).conductor);
    return cs;
}

long sum(const std::vector<long>& v) { return std::accumulate(v.begin(), v.end(), 0L); }

}  // namespace

bool InvariantReport::all_checks_pass() const {
    for (const auto& ck : checks)
        if (!ck.pass) return false;
    return true;
}

BranchSummary branch_invariants(const Curve& c, int i, const AnalysisOptions& opt) {
    const Branch& b = c.branches[static_cast<size_t>(i)];
    Curve solo;
    solo.nvars = c.nvars;
    solo.branches = {b};
    auto mults = coord_mults(solo);
    auto diff = differential_images(solo);
    for (int attempt = 0;; ++attempt) {
        long cap = bootstrap_cap(b, opt.box_slack) * (1L << attempt);
        try {
            BranchSummary out;
            ValueSet g = compute_value_set(mults, {unit_gens(1)}, {cap});
            out.conductor = g.axis_conductor(0);
            out.delta = g.axis_gaps(0);
            out.semigroup = g.axis(0);
            ValueSet l = compute_value_set(mults, diff, {cap});
            l.axis_conductor(0);
            out.diff_values = l.axis(0);
            for (long v : out.diff_values)
                if (!std::binary_search(out.semigroup.begin(), out.semigroup.end(), v)) ++out.nonexact;
            out.tjurina = out.conductor - out.nonexact;
            return out;
        } catch (const no_conductor_in_window&) {
            if (attempt + 1 >= opt.max_box_retries) throw;
        }
    }
}

ValueSet curve_semigroup(const Curve& c, const AnalysisOptions& opt) {
    std::vector<std::vector<long>> I;
    if (have_factors(c) && c.r() >= 2) I = intersection_matrix(c, nullptr);
    return build_sets(c, branch_conductors(c, opt), I, opt).gamma;
}

ValueSet curve_differential_values(const Curve& c, const AnalysisOptions& opt) {
    std::vector<std::vector<long>> I;
    if (have_factors(c) && c.r() >= 2) I = intersection_matrix(c, nullptr);
    return build_sets(c, branch_conductors(c, opt), I, opt).lambda;
}

long delta_via_recursion(const Curve& c, const AnalysisOptions& opt) {
    ValueSet g = curve_semigroup(c, opt);
    ValVec gc = g.conductor();
    long d = sum(gc) - quotient_length(g, gc);
    ValVec up = gc;
    for (auto& v : up) ++v;
    long d2 = sum(up) - quotient_length(g, up);
    if (d != d2)
        throw math_error("delta is not stable one step above the conductor: " +
                         std::to_string(d) + " vs " + std::to_string(d2));
    return d;
}

long delta_plane(const Curve& c, const AnalysisOptions& opt) {
    if (!c.plane() || !have_factors(c))
        throw missing_factor("gap/intersection form of delta needs one factor per branch");
    std::vector<std::vector<long>> I;
    if (c.r() >= 2) I = intersection_matrix(c, nullptr);
    long d = 0;
    for (int i = 0; i < c.r(); ++i) d += branch_invariants(c, i, opt).delta;
    for (int i = 0; i < c.r(); ++i)
        for (int j = i + 1; j < c.r(); ++j) d += I[static_cast<size_t>(i)][static_cast<size_t>(j)];
    return d;
}

InvariantReport analyze(const Curve& c, const AnalysisOptions& opt) {
    InvariantReport rep;
    rep.r = c.r();
    rep.plane = c.plane();
    rep.ci_conditional = !c.plane();
    for (int i = 0; i < rep.r; ++i) rep.branches.push_back(branch_invariants(c, i, opt));

    std::vector<long> cs;
    for (const auto& b : rep.branches) cs.push_back(b.conductor);
    if (have_factors(c) && rep.r >= 2) {
        NamedCheck sym;
        rep.intersection = intersection_matrix(c, &sym);
        rep.checks.push_back(sym);
    }

    CurveSets sets = build_sets(c, cs, rep.intersection, opt);
    rep.gamma = std::move(sets.gamma);
    rep.lambda = std::move(sets.lambda);
    rep.theta_values = theta(rep.lambda);
    rep.lambda_maximals = maximal_points(rep.lambda);

    // delta from the length recursion, checked one step further out
    ValVec gc = rep.gamma.conductor();
    rep.delta_value = sum(gc) - quotient_length(rep.gamma, gc);
    {
        ValVec up = gc;
        for (auto& v : up) ++v;
        long again = sum(up) - quotient_length(rep.gamma, up);
        rep.checks.push_back({"delta_recursion_stable", again == rep.delta_value,
                              std::to_string(rep.delta_value) + " at the conductor, " +
                                  std::to_string(again) + " one step out"});
    }

    long dsum = 0, nsum = 0, tsum = 0;
    for (const auto& b : rep.branches) {
        dsum += b.delta;
        nsum += b.nonexact;
        tsum += b.tjurina;
    }
    const long theta_sum = sum(rep.theta_values);
    rep.tjurina_value = rep.delta_value + dsum - nsum + theta_sum;

    long cross = 0;
    if (!rep.intersection.empty())
        for (int i = 0; i < rep.r; ++i)
            for (int j = i + 1; j < rep.r; ++j)
                cross += rep.intersection[static_cast<size_t>(i)][static_cast<size_t>(j)];

    if (rep.plane && have_factors(c)) {
        rep.delta_plane_value = dsum + cross;
        rep.checks.push_back({"delta_formulas_agree", rep.delta_plane_value == rep.delta_value,
                              "recursion " + std::to_string(rep.delta_value) + ", gaps+intersections " +
                                  std::to_string(rep.delta_plane_value)});
        rep.tjurina_plane_value = tsum + cross + theta_sum;
        rep.checks.push_back({"tau_plane_agrees", rep.tjurina_plane_value == rep.tjurina_value,
                              "main " + std::to_string(rep.tjurina_value) + ", per-branch form " +
                                  std::to_string(rep.tjurina_plane_value)});
    }

    if (rep.r == 2) {
        rep.tjurina_special_value = rep.delta_value + dsum - nsum +
                                    static_cast<long>(rep.lambda_maximals.M.size());
        rep.checks.push_back({"tau_two_branch_agrees",
                              rep.tjurina_special_value == rep.tjurina_value,
                              "maximal point count form gives " +
                                  std::to_string(rep.tjurina_special_value)});
    } else if (rep.r == 3) {
        long pair_m = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                pair_m += static_cast<long>(maximal_points(rep.lambda.project({i, j})).M.size());
        rep.tjurina_special_value =
            rep.delta_value + dsum - nsum + pair_m +
            static_cast<long>(rep.lambda_maximals.RM.size()) -
            static_cast<long>(rep.lambda_maximals.AM.size());
        rep.checks.push_back({"tau_three_branch_agrees",
                              rep.tjurina_special_value == rep.tjurina_value,
                              "pairwise maximal form gives " +
                                  std::to_string(rep.tjurina_special_value)});
    }

    if (opt.run_additive && rep.plane && have_factors(c) && rep.r >= 2) {
        bool all = true;
        std::string detail;
        for (unsigned mask = 1; mask + 1 < (1u << rep.r); ++mask) {
            if (!(mask & 1u)) continue;  // each unordered partition once
            std::vector<int> J;
            for (int i = 0; i < rep.r; ++i)
                if (mask & (1u << i)) J.push_back(i);
            auto sides = additive_check(c, J, opt);
            if (sides.first != sides.second) {
                all = false;
                detail += "partition at mask " + std::to_string(mask) + ": " +
                          std::to_string(sides.first) + " vs " + std::to_string(sides.second) + "; ";
            }
        }
        rep.checks.push_back({"additive_partitions_agree", all,
                              all ? "every partition reproduces the total" : detail});
    }
    return rep;
}

long tjurina_main(const Curve& c, const AnalysisOptions& opt) {
    AnalysisOptions o = opt;
    o.run_additive = false;
    return analyze(c, o).tjurina_value;
}

long tjurina_plane(const Curve& c, const AnalysisOptions& opt) {
    if (!c.plane() || !have_factors(c))
        throw missing_factor("per-branch form of tau needs one factor per branch");
    AnalysisOptions o = opt;
    o.run_additive = false;
    return analyze(c, o).tjurina_plane_value;
}

long tjurina_r2(const Curve& c, const AnalysisOptions& opt) {
    if (c.r() != 2) throw wrong_branch_count("two branch formula needs exactly two branches");
    AnalysisOptions o = opt;
    o.run_additive = false;
    return analyze(c, o).tjurina_special_value;
}

long tjurina_r3(const Curve& c, const AnalysisOptions& opt) {
    if (c.r() != 3) throw wrong_branch_count("three branch formula needs exactly three branches");
    AnalysisOptions o = opt;
    o.run_additive = false;
    return analyze(c, o).tjurina_special_value;
}

std::pair<long, long> additive_check(const Curve& c, const std::vector<int>& J,
                                     const AnalysisOptions& opt) {
    if (!c.plane() || !have_factors(c))
        throw missing_factor("partition formula needs one factor per branch");
    const int r = c.r();
    std::vector<char> inJ(static_cast<size_t>(r), 0);
    for (int j : J) {
        if (j < 0 || j >= r) throw input_error("partition index out of range");
        inJ[static_cast<size_t>(j)] = 1;
    }
    std::vector<int> K;
    for (int i = 0; i < r; ++i)
        if (!inJ[static_cast<size_t>(i)]) K.push_back(i);
    if (J.empty() || K.empty()) throw input_error("partition must split the branches in two");

    AnalysisOptions o = opt;
    o.run_additive = false;

    auto theta_total = [&](const Curve& part) {
        ValueSet lam = curve_differential_values(part, o);
        return sum(theta(lam));
    };

    InvariantReport full = analyze(c, o);
    long lhs = full.tjurina_value;

    Curve cj = subcurve(c, J), ck = subcurve(c, K);
    long tj = analyze(cj, o).tjurina_value;
    long tk = analyze(ck, o).tjurina_value;
    long cross = 0;
    for (int j : J)
        for (int k : K) cross += full.intersection[static_cast<size_t>(j)][static_cast<size_t>(k)];
    long rhs = tj + tk + cross + sum(full.theta_values) - theta_total(cj) - theta_total(ck);
    return {lhs, rhs};
}

}  // namespace tjurina
