#include "tjurina/curve.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "tjurina/errors.hpp"

namespace tjurina {

ValVec Branch::coord_orders() const {
    ValVec v(coords.size());
    for (size_t l = 0; l < coords.size(); ++l) v[l] = coords[l].ord();
    return v;
}

long Branch::mult() const {
    long m = kTop;
    for (const auto& s : coords) m = std::min(m, s.ord());
    return m;
}

std::vector<ValVec> Curve::value_matrix() const {
    std::vector<ValVec> m;
    for (const auto& b : branches) m.push_back(b.coord_orders());
    return m;
}

namespace {

// gcd of every exponent appearing in the parametrization
long branch_exponent_gcd(const Branch& b) {
    long g = 0;
    for (const auto& s : b.coords)
        for (const auto& [d, c] : s.terms()) g = std::gcd(g, d);
    return g;
}

bool same_up_to_sign_conjugate(const Branch& a, const Branch& b) {
    if (a.coords.size() != b.coords.size()) return false;
    bool plain = true, flipped = true;
    for (size_t l = 0; l < a.coords.size(); ++l) {
        const auto& sa = a.coords[l];
        const auto& sb = b.coords[l];
        if (!(sa == sb)) plain = false;
        // compare against t -> -t
        Series neg;
        for (const auto& [d, c] : sb.terms()) neg.set_coeff(d, (d % 2) ? -c : c);
        Series negt = neg.truncated(sb.trunc());
        if (!(sa == negt)) flipped = false;
        if (!plain && !flipped) return false;
    }
    return plain || flipped;
}

}  // namespace

void validate_branches(const std::vector<Branch>& branches) {
    if (branches.empty()) throw input_error("curve has no branches");
    for (const auto& b : branches) {
        bool any = false;
        for (const auto& s : b.coords) {
            long o = s.ord();
            if (o == 0) throw input_error("branch coordinate is a unit (order 0)");
            if (o != Series::kOrdTop) any = true;
        }
        if (!any) throw input_error("branch parametrization is identically zero");
        long g = branch_exponent_gcd(b);
        if (g > 1)
            throw input_error("branch parametrization is not primitive (exponent gcd " +
                              std::to_string(g) + ")");
    }
    for (size_t i = 0; i < branches.size(); ++i)
        for (size_t j = i + 1; j < branches.size(); ++j)
            if (same_up_to_sign_conjugate(branches[i], branches[j]))
                throw not_square_free("branches " + std::to_string(i + 1) + " and " +
                                      std::to_string(j + 1) + " coincide");
}

ValVec value_of_function(const Curve& c, const MPoly& g) {
    ValVec v;
    for (const auto& b : c.branches) {
        long o = g.eval_series(b.coords).ord();
        v.push_back(o >= kTop ? kTop : o);
    }
    return v;
}

std::vector<std::vector<Series>> differential_images(const Curve& c) {
    std::vector<std::vector<Series>> im(c.nvars);
    for (int l = 0; l < c.nvars; ++l) {
        for (const auto& b : c.branches)
            im[l].push_back(b.coords[l].derivative().shifted(1));
        }
    return im;
}

long intersection_multiplicity(const Curve& c, int j, int k) {
    if (j == k) throw math_error("intersection_multiplicity needs two distinct branches");
    if (c.factors.empty()) throw missing_factor("no per-branch equations available");
    Series s = c.factors[j].eval_series(c.branches[k].coords);
    long o = s.ord();
    if (o == Series::kOrdTop) {
        if (s.exact())
            throw non_finite("branches " + std::to_string(j + 1) + " and " +
                             std::to_string(k + 1) + " lie on a common component");
        throw truncation_too_small("intersection number exceeds branch truncation");
    }
    return o;
}

MPoly reconstruct_factor(const Branch& b) {
    if (b.coords.size() != 2) throw math_error("factor reconstruction is for plane branches");
    const Series& x = b.coords[0];
    const Series& y = b.coords[1];

    auto max_deg = [](const Series& s) {
        long d = 0;
        for (const auto& [k, c] : s.terms()) d = std::max(d, k);
        return d;
    };
    long dx = max_deg(x), dy = max_deg(y);
    bool exact = x.exact() && y.exact();
    // resultant bound: the minimal annihilator fits in degY <= deg_t x, degX <= deg_t y
    long capA = exact ? std::max(dy, 1L) : std::max(std::min(x.trunc(), 40L), 1L);
    long capB = exact ? std::max(dx, 1L) : std::max(std::min(y.trunc(), 40L), 1L);

    for (long B = 1; B <= capB; ++B) {
        for (long A = 1; A <= capA; ++A) {
            // unknown coefficients c_{a,b} for X^a Y^b, a <= A, b <= B
            std::vector<std::pair<long, long>> sup;
            for (long a = 0; a <= A; ++a)
                for (long bb = 0; bb <= B; ++bb) sup.push_back({a, bb});

            long tmax = A * std::max(dx, 1L) + B * std::max(dy, 1L);
            if (!exact) tmax = std::min({tmax, x.trunc(), y.trunc()});

            // columns: t-degrees 0..tmax ; rows: one per unknown (transposed kernel solve)
            std::vector<std::vector<Rat>> rows;
            for (auto [a, bb] : sup) {
                Series m = x.pow(a) * y.pow(bb);
                std::vector<Rat> row(tmax + 1, Rat(0));
                for (const auto& [d, cc] : m.terms())
                    if (d <= tmax) row[d] = cc;
                rows.push_back(std::move(row));
            }
            // kernel of the transposed matrix by Gaussian elimination with
            // bookkeeping of the combination that produced each row
            size_t nr = rows.size();
            std::vector<std::vector<Rat>> comb(nr, std::vector<Rat>(nr, Rat(0)));
            for (size_t i = 0; i < nr; ++i) comb[i][i] = 1;
            std::vector<long> lead(nr, -1);
            for (size_t i = 0; i < nr; ++i) {
                for (;;) {
                    long piv = -1;
                    for (long d = 0; d <= tmax; ++d)
                        if (!rat_is_zero(rows[i][d])) {
                            piv = d;
                            break;
                        }
                    if (piv < 0) break;  // kernel element found
                    size_t owner = nr;
                    for (size_t k = 0; k < i; ++k)
                        if (lead[k] == piv) {
                            owner = k;
                            break;
                        }
                    if (owner == nr) {
                        lead[i] = piv;
                        break;
                    }
                    Rat f = rows[i][piv] / rows[owner][piv];
                    for (long d = piv; d <= tmax; ++d) rows[i][d] -= f * rows[owner][d];
                    for (size_t k = 0; k < nr; ++k) comb[i][k] -= f * comb[owner][k];
                }
                if (lead[i] < 0) {
                    // assemble the annihilator from the recorded combination
                    MPoly F(2);
                    for (size_t k = 0; k < nr; ++k)
                        if (!rat_is_zero(comb[i][k]))
                            F.add_term({static_cast<unsigned>(sup[k].first),
                                        static_cast<unsigned>(sup[k].second)},
                                       comb[i][k]);
                    if (F.is_zero()) continue;
                    // clear denominators, primitive part, positive top term
                    mpz_class den(1), num(0);
                    for (const auto& [e, cc] : F.terms()) {
                        den = lcm(den, cc.get_den());
                    }
                    MPoly G(2);
                    for (const auto& [e, cc] : F.terms()) {
                        Rat v = cc * Rat(den);
                        num = gcd(num, v.get_num());
                        G.add_term(e, v);
                    }
                    if (num != 0 && num != 1) {
                        MPoly H(2);
                        for (const auto& [e, cc] : G.terms()) H.add_term(e, cc / Rat(num));
                        G = H;
                    }
                    if (sgn(G.terms().rbegin()->second) < 0) G = -G;
                    if (exact && !G.eval_series(b.coords).known_zero()) continue;
                    return G;
                }
            }
        }
    }
    throw missing_factor("no polynomial annihilator found for branch " + b.label);
}

bool first_coordinate_transversal(const Curve& c) {
    for (const auto& b : c.branches)
        if (b.coords[0].ord() != b.mult()) return false;
    return true;
}

Curve make_transversal_plane(const Curve& c) {
    if (!c.plane()) throw not_transversal("generic coordinate change implemented for plane curves only");
    if (first_coordinate_transversal(c)) {
        Curve d = c;
        d.transversal = true;
        return d;
    }
    for (long lam = 1; lam <= 64; ++lam) {
        for (long sign : {1L, -1L}) {
            Rat l = rat_from_long(sign * lam);
            bool ok = true;
            for (const auto& b : c.branches) {
                Series nx = b.coords[0] + b.coords[1].scaled(l);
                if (nx.ord() != b.mult()) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            Curve d = c;
            for (auto& b : d.branches) b.coords[0] = b.coords[0] + b.coords[1].scaled(l);
            // x' = x + l y, so substitute X -> X' - l Y into every equation
            MPoly X = MPoly::variable(2, 0), Y = MPoly::variable(2, 1);
            std::vector<MPoly> sub = {X - Y.scaled(l), Y};
            for (auto& f : d.factors) f = f.eval_mpoly(sub);
            if (d.poly) d.poly = d.poly->eval_mpoly(sub);
            d.transversal = true;
            return d;
        }
    }
    throw not_transversal("no small lambda made x + lambda*y transversal");
}

}  // namespace tjurina
