#include "tjurina/verification.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

#include "tjurina/errors.hpp"
#include "tjurina/invariants.hpp"
#include "tjurina/value_sets.hpp"

namespace tjurina {

namespace {

using EchRow = std::vector<std::pair<long, Rat>>;

// r1 + k*r2, both sorted by column, zero results dropped
EchRow ech_axpy(const EchRow& r1, const EchRow& r2, const Rat& k) {
    EchRow out;
    out.reserve(r1.size() + r2.size());
    size_t i = 0, j = 0;
    while (i < r1.size() || j < r2.size()) {
        if (j == r2.size() || (i < r1.size() && r1[i].first < r2[j].first)) {
            out.push_back(r1[i++]);
        } else if (i == r1.size() || r2[j].first < r1[i].first) {
            out.emplace_back(r2[j].first, r2[j].second * k);
            ++j;
        } else {
            Rat v = r1[i].second + r2[j].second * k;
            if (v != Rat(0)) out.emplace_back(r1[i].first, v);
            ++i, ++j;
        }
    }
    return out;
}

struct Echelon {
    std::map<long, EchRow> pivots;  // lead column -> monic row
    long rank = 0;

    void insert(EchRow row) {
        while (!row.empty()) {
            auto it = pivots.find(row.front().first);
            if (it == pivots.end()) {
                Rat lead = row.front().second;
                for (auto& [col, v] : row) v = v / lead;
                ++rank;
                pivots.emplace(row.front().first, std::move(row));
                return;
            }
            row = ech_axpy(row, it->second, -row.front().second);
        }
    }
};

// column index of x^a y^b under ascending degree-then-x order
long mono_col(long a, long b) {
    long d = a + b;
    return d * (d + 1) / 2 + a;
}

long lowest_degree(const MPoly& g) {
    long best = -1;
    for (const auto& [e, c] : g.terms()) {
        long d = e[0] + e[1];
        if (best < 0 || d < best) best = d;
    }
    return best;
}

// dim Q[[x,y]] / ((gens) + m^D)
long quotient_dim(const std::vector<MPoly>& gens, long D) {
    Echelon ech;
    for (const MPoly& g : gens) {
        if (g.is_zero()) continue;
        long ordg = lowest_degree(g);
        for (long md = 0; md + ordg < D; ++md) {
            for (long u = 0; u <= md; ++u) {
                long v = md - u;
                EchRow row;
                for (const auto& [e, c] : g.terms()) {
                    long a = e[0] + u, b = e[1] + v;
                    if (a + b < D) row.emplace_back(mono_col(a, b), c);
                }
                std::sort(row.begin(), row.end());
                ech.insert(std::move(row));
            }
        }
    }
    return D * (D + 1) / 2 - ech.rank;
}

Series det_series(const std::vector<std::vector<Series>>& m) {
    size_t n = m.size();
    if (n == 1) return m[0][0];
    Series acc;
    int sign = 1;
    for (size_t k = 0; k < n; ++k) {
        std::vector<std::vector<Series>> sub;
        for (size_t i = 1; i < n; ++i) {
            std::vector<Series> row;
            for (size_t j = 0; j < n; ++j)
                if (j != k) row.push_back(m[i][j]);
            sub.push_back(std::move(row));
        }
        Series term = m[0][k] * det_series(sub);
        acc = (sign > 0) ? acc + term : acc - term;
        sign = -sign;
    }
    return acc;
}

void check_equations(const Curve& c, const std::vector<MPoly>& eqs) {
    if (static_cast<int>(eqs.size()) != c.nvars - 1)
        throw input_error("expected " + std::to_string(c.nvars - 1) + " defining equations, got " +
                          std::to_string(eqs.size()));
    for (const MPoly& f : eqs)
        if (f.nvars() != c.nvars) throw input_error("equation variable count mismatch");
}

// determinant rows shared by dee_operator and torsion_test: the n-1 pulled
// back gradients of the defining equations on branch i
std::vector<std::vector<Series>> gradient_rows(const Curve& c, int i,
                                               const std::vector<MPoly>& eqs) {
    const std::vector<Series>& coords = c.branches[static_cast<size_t>(i)].coords;
    std::vector<std::vector<Series>> rows;
    for (const MPoly& f : eqs) {
        std::vector<Series> row;
        for (int l = 0; l < c.nvars; ++l) row.push_back(f.partial(l).eval_series(coords));
        rows.push_back(std::move(row));
    }
    return rows;
}

MPoly full_equation(const Curve& c) {
    if (c.poly) return *c.poly;
    if (c.factors.empty()) throw missing_factor("no defining equation available");
    MPoly f = c.factors[0];
    for (size_t j = 1; j < c.factors.size(); ++j) f *= c.factors[j];
    return f;
}

std::string vec_str(const ValVec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + ")";
}

std::vector<ValVec> finite_members(const ValueSet& s) {
    std::vector<ValVec> out;
    for (const ValVec& m : s.members) {
        bool fin = true;
        for (size_t i = 0; i < m.size(); ++i)
            if (m[i] > s.box[i]) fin = false;
        if (fin) out.push_back(m);
    }
    return out;
}

}  // namespace

long tjurina_direct(const MPoly& f) {
    if (f.nvars() != 2) throw input_error("tjurina_direct expects a polynomial in two variables");
    if (f.is_zero()) throw zero_polynomial("tjurina_direct: zero polynomial");
    std::vector<MPoly> gens = {f, f.partial(0), f.partial(1)};
    long D = 2 * std::max<long>(f.total_degree(), 2);
    for (int attempt = 0; attempt < 3; ++attempt) {
        long d0 = quotient_dim(gens, D);
        long d1 = quotient_dim(gens, D + 1);
        if (d0 == d1 && d1 == quotient_dim(gens, D + 2)) return d0;
        D *= 2;
    }
    throw non_isolated("jacobian colength did not stabilize below degree " +
                       std::to_string(D / 2 + 2) + "; singularity not isolated?");
}

std::vector<Series> dee_operator(const Curve& c, const MPoly& g, const std::vector<MPoly>& eqs) {
    check_equations(c, eqs);
    if (g.nvars() != c.nvars) throw input_error("dee_operator: variable count mismatch");
    std::vector<Series> out;
    for (int i = 0; i < c.r(); ++i) {
        auto rows = gradient_rows(c, i, eqs);
        std::vector<Series> last;
        for (int l = 0; l < c.nvars; ++l)
            last.push_back(g.partial(l).eval_series(c.branches[static_cast<size_t>(i)].coords));
        rows.push_back(std::move(last));
        out.push_back(det_series(rows));
    }
    return out;
}

bool torsion_test(const Curve& c, const std::vector<MPoly>& omega, const std::vector<MPoly>& eqs) {
    check_equations(c, eqs);
    if (static_cast<int>(omega.size()) != c.nvars)
        throw input_error("torsion_test: need one coefficient per coordinate differential");
    std::vector<Series> dets;
    for (int i = 0; i < c.r(); ++i) {
        auto rows = gradient_rows(c, i, eqs);
        std::vector<Series> last;
        for (int l = 0; l < c.nvars; ++l)
            last.push_back(omega[static_cast<size_t>(l)].eval_series(
                c.branches[static_cast<size_t>(i)].coords));
        rows.push_back(std::move(last));
        dets.push_back(det_series(rows));
    }
    // a nonzero coefficient anywhere is a conclusive no
    for (const Series& d : dets)
        if (!d.is_zero_to_trunc()) return false;
    for (const Series& d : dets)
        if (!d.known_zero())
            throw truncation_too_small(
                "torsion test inconclusive: determinant vanishes to truncation " +
                std::to_string(d.trunc()) + " but is not provably zero");
    return true;
}

CheckResult piene_check(const Curve& c) {
    if (!c.plane()) throw input_error("piene_check: plane curves only");
    MPoly f = full_equation(c);
    if (c.factors.empty()) throw missing_factor("piene_check needs the branch factors");
    if (!first_coordinate_transversal(c))
        throw not_transversal("piene_check: first coordinate is not transversal");

    std::vector<long> cond(static_cast<size_t>(c.r()), 0);
    for (int i = 0; i < c.r(); ++i) {
        cond[static_cast<size_t>(i)] = branch_invariants(c, i).conductor;
        for (int j = 0; j < c.r(); ++j)
            if (j != i) cond[static_cast<size_t>(i)] += intersection_multiplicity(c, j, i);
    }

    MPoly fx = f.partial(0), fy = f.partial(1);
    CheckResult res{"piene_order_law", true, ""};
    std::ostringstream det;
    for (int i = 0; i < c.r(); ++i) {
        const auto& coords = c.branches[static_cast<size_t>(i)].coords;
        long ci = cond[static_cast<size_t>(i)];
        // ord(f_Y) pairs with v(x), ord(f_X) with v(y)
        std::pair<Series, long> checks[2] = {{fy.eval_series(coords), coords[0].ord()},
                                             {fx.eval_series(coords), coords[1].ord()}};
        for (int k = 0; k < 2; ++k) {
            long got = checks[k].first.ord();
            long want = checks[k].second >= Series::kOrdTop ? Series::kOrdTop
                                                            : ci + checks[k].second - 1;
            if (got != want) {
                res.passed = false;
                det << "branch " << i + 1 << ": ord " << got << " != " << want << "; ";
            }
        }
        det << "branch " << i + 1 << " conductor " << ci << " ok; ";
    }
    res.details = det.str();
    return res;
}

CheckResult pol_identity_check(const Curve& c) {
    if (!c.plane()) throw input_error("pol_identity_check: plane curves only");
    MPoly f = full_equation(c);

    ValueSet gam = curve_semigroup(c);
    ValueSet lam = curve_differential_values(c);
    ValVec cv = gam.conductor();

    ValVec jbox(static_cast<size_t>(c.r()), 0);
    for (int i = 0; i < c.r(); ++i)
        jbox[static_cast<size_t>(i)] = lam.box[static_cast<size_t>(i)] + cv[static_cast<size_t>(i)] - 1;

    std::vector<std::vector<Series>> mults(static_cast<size_t>(c.nvars));
    for (int l = 0; l < c.nvars; ++l)
        for (int i = 0; i < c.r(); ++i)
            mults[static_cast<size_t>(l)].push_back(
                c.branches[static_cast<size_t>(i)].coords[static_cast<size_t>(l)]);
    std::vector<std::vector<Series>> gens;
    for (const MPoly& g : {f.partial(0), f.partial(1)}) {
        std::vector<Series> row;
        for (int i = 0; i < c.r(); ++i)
            row.push_back(g.eval_series(c.branches[static_cast<size_t>(i)].coords));
        gens.push_back(std::move(row));
    }
    ValueSet jac = compute_value_set(mults, gens, jbox);

    std::vector<ValVec> shifted = finite_members(lam);
    for (ValVec& v : shifted)
        for (size_t i = 0; i < v.size(); ++i) v[i] += cv[i] - 1;
    std::vector<ValVec> jm = finite_members(jac);

    CheckResult res{"jacobian_vs_shifted_differentials", shifted == jm, ""};
    if (res.passed) {
        res.details = "sets agree on " + std::to_string(jm.size()) + " window points";
    } else {
        std::vector<ValVec> only_l, only_j;
        std::set_difference(shifted.begin(), shifted.end(), jm.begin(), jm.end(),
                            std::back_inserter(only_l));
        std::set_difference(jm.begin(), jm.end(), shifted.begin(), shifted.end(),
                            std::back_inserter(only_j));
        std::ostringstream d;
        d << only_l.size() << " points missing from jacobian set";
        if (!only_l.empty()) d << ", first " << vec_str(only_l.front());
        d << "; " << only_j.size() << " extra";
        if (!only_j.empty()) d << ", first " << vec_str(only_j.front());
        res.details = d.str();
    }
    return res;
}

}  // namespace tjurina
