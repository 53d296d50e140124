#include "tjurina/newton_puiseux.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>

#include "tjurina/errors.hpp"

namespace tjurina {

namespace {

long min_exp(const MPoly& f, int var) {
    long m = -1;
    for (const auto& [e, c] : f.terms()) {
        (void)c;
        if (m < 0 || (long)e[var] < m) m = e[var];
    }
    return m;
}

// divide by X^a Y^b, exponents must allow it
MPoly shift_down(const MPoly& f, long a, long b) {
    MPoly g(2);
    for (const auto& [e, c] : f.terms())
        g.add_term({(unsigned)(e[0] - a), (unsigned)(e[1] - b)}, c);
    return g;
}

long cross(long ax, long ay, long bx, long by) { return ax * by - ay * bx; }

/* ord-0 series inverse, correct through degree prec. The Newton update
 * b(2 - s b) doubles the number of good coefficients; the candidate is kept
 * as an exact polynomial between rounds because the truncation algebra alone
 * cannot see the convergence. */
Series series_inv(const Series& s, long prec) {
    Rat c0 = s.coeff(0);
    if (rat_is_zero(c0)) throw math_error("series_inv: not a unit");
    Series b = Series::monomial(0, 1 / c0);
    long have = 0;
    while (have < prec) {
        have = std::min(2 * have + 1, prec);
        Series two = Series::monomial(0, 2);
        Series upd = (b * (two - s.truncated(have) * b)).truncated(have);
        b = Series::zero_truncated(Series::kExact);
        for (const auto& [d, c] : upd.terms()) b.set_coeff(d, c);
    }
    Series out = Series::zero_truncated(prec);
    for (const auto& [d, c] : b.terms()) out.set_coeff(d, c);
    return out;
}

struct Leaf {
    long Q;    // x = t^Q
    Series y;  // in t
};

// rational roots with multiplicity of a nonzero univariate poly (var 0),
// zero roots excluded
std::vector<std::pair<Rat, int>> rational_roots(MPoly f) {
    std::vector<std::pair<Rat, int>> out;
    long k = min_exp(f, 0);
    if (k > 0) {
        MPoly g(1);
        for (const auto& [e, c] : f.terms()) g.add_term({(unsigned)(e[0] - k)}, c);
        f = g;
    }
    if (f.total_degree() <= 0) return out;

    // integer coefficient vector
    long deg = f.total_degree();
    mpz_class den = 1;
    for (const auto& [e, c] : f.terms()) {
        (void)e;
        den = lcm(den, c.get_den());
    }
    std::vector<mpz_class> a((size_t)deg + 1, mpz_class(0));
    for (const auto& [e, c] : f.terms()) {
        Rat t = c * Rat(den);
        a[e[0]] = t.get_num();
    }

    auto divisors = [](mpz_class n) {
        std::vector<mpz_class> ds;
        n = abs(n);
        std::map<mpz_class, int> fac;
        for (mpz_class p = 2; p * p <= n && p < 2000000; ++p)
            while (n % p == 0) { ++fac[p]; n /= p; }
        if (n > 1) ++fac[n];
        ds.push_back(1);
        for (const auto& [p, e] : fac) {
            size_t base = ds.size();
            mpz_class pk = 1;
            for (int i = 0; i < e; ++i) {
                pk *= p;
                for (size_t j = 0; j < base; ++j) ds.push_back(ds[j] * pk);
            }
        }
        return ds;
    };

    auto eval_at = [&a, &deg](const Rat& r) {
        Rat acc = 0;
        for (long i = deg; i >= 0; --i) acc = acc * r + Rat(a[(size_t)i]);
        return acc;
    };
    // deflate once at root r (synthetic division)
    auto deflate = [&a, &deg](const Rat& r) {
        std::vector<mpz_class> b((size_t)deg, mpz_class(0));
        Rat carry = Rat(a[(size_t)deg]);
        mpz_class nd = 1;
        std::vector<Rat> q((size_t)deg);
        for (long i = deg - 1; i >= 0; --i) {
            q[(size_t)i] = carry;
            carry = carry * r + Rat(a[(size_t)i]);
        }
        for (const Rat& c : q) nd = lcm(nd, c.get_den());
        for (long i = 0; i < deg; ++i) b[(size_t)i] = Rat(q[(size_t)i] * Rat(nd)).get_num();
        a = b;
        --deg;
    };

    std::vector<Rat> cands;
    for (const mpz_class& rn : divisors(a[0]))
        for (const mpz_class& rd : divisors(a[(size_t)deg])) {
            Rat r(rn, rd);
            r.canonicalize();
            cands.push_back(r);
            cands.push_back(-r);
        }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

    for (const Rat& r : cands) {
        int m = 0;
        while (deg > 0 && rat_is_zero(eval_at(r))) {
            deflate(r);
            ++m;
        }
        if (m) out.emplace_back(r, m);
    }
    return out;
}

// f(x^q, x^p (c + y)) / x^{edge value}
MPoly edge_substitute(const MPoly& f, long q, long p, const Rat& c) {
    MPoly g(2);
    long v0 = -1;
    for (const auto& [e, co] : f.terms()) {
        (void)co;
        long v = q * (long)e[0] + p * (long)e[1];
        if (v0 < 0 || v < v0) v0 = v;
    }
    for (const auto& [e, co] : f.terms()) {
        long v = q * (long)e[0] + p * (long)e[1] - v0;
        long j = e[1];
        // (c + y)^j expanded binomially
        mpz_class bin;
        for (long k = 0; k <= j; ++k) {
            mpz_bin_uiui(bin.get_mpz_t(), (unsigned long)j, (unsigned long)k);
            Rat term = co * Rat(bin) * rat_pow(c, (unsigned long)(j - k));
            if (!rat_is_zero(term)) g.add_term({(unsigned)v, (unsigned)k}, term);
        }
    }
    return g;
}

// unique series solution y(t), y(0)=0, of f(t,y)=0 when the root is simple.
// Newton steps double the count of correct coefficients; the candidate is
// kept as an exact polynomial between rounds so precision can grow.
Series hensel_lift(const MPoly& f, long N) {
    MPoly fy = f.partial(1);
    Series y = Series::zero_truncated(Series::kExact);
    long correct = 0;
    while (correct < N) {
        long next = std::min(2 * correct + 1, N);
        Series t = Series::monomial(1, 1, next);
        std::vector<Series> at{t, y};
        Series val = f.eval_series(at);
        Series der = fy.eval_series(at);
        Series upd = (y.truncated(next) - val * series_inv(der, next)).truncated(next);
        y = Series::zero_truncated(Series::kExact);
        for (const auto& [d, c] : upd.terms()) y.set_coeff(d, c);
        correct = next;
    }
    // certify: a terminating candidate that satisfies f identically stays exact
    std::vector<Series> at{Series::monomial(1, 1), y};
    if (f.eval_series(at).known_zero()) return y;
    Series out = Series::zero_truncated(N);
    for (const auto& [d, c] : y.terms()) out.set_coeff(d, c);
    return out;
}

std::vector<Leaf> expand(const MPoly& fin, long N, int depth) {
    if (depth > 48) throw not_square_free("branch separation did not terminate");
    std::vector<Leaf> out;
    MPoly f = fin;

    long m = min_exp(f, 1);
    if (m >= 2) throw not_square_free("repeated y-axis tangent factor");
    if (m == 1) {
        f = shift_down(f, 0, 1);
        out.push_back({1, Series::zero_truncated(Series::kExact)});
    }
    if (!rat_is_zero(f.coeff({0, 0}))) return out;  // unit: nothing more

    NewtonPolygon poly = newton_polygon(f);
    for (const auto& ed : poly.edges) {
        for (const auto& [c, mult] : rational_roots(ed.psi)) {
            MPoly f2 = edge_substitute(f, ed.q, ed.p, c);
            if (mult == 1) {
                Series u = hensel_lift(f2, N);
                Series y = Series::monomial(ed.p, 1) * (Series::monomial(0, c) + u);
                out.push_back({ed.q, y});
            } else {
                for (const Leaf& sub : expand(f2, N, depth + 1)) {
                    Series y = Series::monomial(ed.p * sub.Q, 1) *
                               (Series::monomial(0, c) + sub.y);
                    out.push_back({ed.q * sub.Q, y});
                }
            }
        }
    }
    return out;
}

bool branch_pair_conjugate(const Branch& a, const Branch& b) {
    if (a.coords.size() != b.coords.size()) return false;
    auto flip = [](const Series& s) {
        Series r = Series::zero_truncated(s.trunc());
        for (const auto& [d, c] : s.terms()) r.set_coeff(d, (d % 2) ? -c : c);
        return r;
    };
    bool plain = true, conj = true;
    for (size_t i = 0; i < a.coords.size(); ++i) {
        if (!(a.coords[i] == b.coords[i])) plain = false;
        if (!(a.coords[i] == flip(b.coords[i]))) conj = false;
    }
    if (plain) throw not_square_free("coincident branches found");
    return conj;
}

// canonical order: multiplicity, then coordinate orders, then coefficient
// streams degree by degree
bool series_stream_less(const Series& a, const Series& b) {
    long hi = 0;
    for (const auto& [d, c] : a.terms()) { (void)c; hi = std::max(hi, d); }
    for (const auto& [d, c] : b.terms()) { (void)c; hi = std::max(hi, d); }
    for (long d = 0; d <= hi; ++d) {
        Rat ca = 0, cb = 0;
        for (const auto& [dd, c] : a.terms()) if (dd == d) ca = c;
        for (const auto& [dd, c] : b.terms()) if (dd == d) cb = c;
        if (ca != cb) return ca < cb;
    }
    return false;
}

bool branch_less(const Branch& a, const Branch& b) {
    if (a.mult() != b.mult()) return a.mult() < b.mult();
    ValVec oa = a.coord_orders(), ob = b.coord_orders();
    if (oa != ob) return oa < ob;
    for (size_t i = 0; i < a.coords.size(); ++i) {
        if (series_stream_less(a.coords[i], b.coords[i])) return true;
        if (series_stream_less(b.coords[i], a.coords[i])) return false;
    }
    return false;
}

}  // namespace

NewtonPolygon newton_polygon(const MPoly& f) {
    if (f.is_zero()) throw zero_polynomial("the zero polynomial defines no curve");
    NewtonPolygon np;
    for (const auto& [e, c] : f.terms()) {
        (void)c;
        np.support.emplace_back((long)e[0], (long)e[1]);
    }
    std::sort(np.support.begin(), np.support.end());

    // lower hull over (i, j); only the strictly descending part matters
    std::vector<std::pair<long, long>> pts = np.support;
    std::vector<std::pair<long, long>> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            auto& a = hull[hull.size() - 2];
            auto& b = hull[hull.size() - 1];
            if (cross(b.first - a.first, b.second - a.second,
                      p.first - a.first, p.second - a.second) <= 0)
                hull.pop_back();
            else
                break;
        }
        while (hull.size() == 1 && hull[0].first == p.first && hull[0].second > p.second)
            hull.pop_back();
        hull.push_back(p);
    }

    for (size_t k = 0; k + 1 < hull.size(); ++k) {
        long i0 = hull[k].first, j0 = hull[k].second;
        long i1 = hull[k + 1].first, j1 = hull[k + 1].second;
        if (j1 >= j0) continue;  // horizontal or rising part of the hull
        NewtonPolygon::Edge ed;
        ed.i0 = i0; ed.j0 = j0; ed.i1 = i1; ed.j1 = j1;
        long di = i1 - i0, dj = j0 - j1;
        long g = std::gcd(di, dj);
        ed.p = di / g;
        ed.q = dj / g;
        ed.g = g;
        MPoly psi(1);
        for (const auto& [e, c] : f.terms()) {
            long i = e[0], j = e[1];
            // on the segment: (i - i0) * dj == (j0 - j) * di within range
            if (i < i0 || i > i1) continue;
            if ((i - i0) * dj != (j0 - j) * di) continue;
            psi.add_term({(unsigned)(j - j1)}, c);
        }
        ed.psi = psi;
        np.edges.push_back(ed);
    }
    return np;
}

std::vector<Branch> puiseux_branches(const MPoly& f, long N) {
    if (f.is_zero()) throw zero_polynomial("the zero polynomial defines no curve");
    if (f.nvars() != 2) throw input_error("puiseux_branches expects a plane polynomial");
    if (!rat_is_zero(f.coeff({0, 0})))
        throw input_error("polynomial is a unit at the origin: empty germ");

    MPoly g = f;
    std::vector<Branch> out;

    long kx = min_exp(g, 0);
    if (kx >= 2) throw not_square_free("repeated x-axis tangent factor");
    if (kx == 1) {
        g = shift_down(g, 1, 0);
        Branch vert;
        vert.coords = {Series::zero_truncated(Series::kExact), Series::monomial(1, 1)};
        out.push_back(vert);
        if (!g.is_zero() && !rat_is_zero(g.coeff({0, 0}))) {
            // lone vertical branch, nothing through the origin remains
            out[0].label = "b1";
            return out;
        }
    }

    // number of local y-roots counted with multiplicity
    long j0 = -1;
    for (const auto& [e, c] : g.terms()) {
        (void)c;
        if (e[0] == 0 && (j0 < 0 || (long)e[1] < j0)) j0 = e[1];
    }
    if (j0 < 0) throw not_square_free("x divides the polynomial twice");

    std::vector<Leaf> leaves = expand(g, N, 0);

    std::vector<Branch> found;
    for (const Leaf& lf : leaves) {
        Branch b;
        b.coords = {Series::monomial(lf.Q, 1), lf.y};
        found.push_back(b);
    }
    // conjugate parametrizations (t -> -t) describe the same branch; keep
    // the representative with the larger coefficient stream
    std::vector<Branch> kept;
    for (const Branch& b : found) {
        bool dup = false;
        for (Branch& k : kept)
            if (branch_pair_conjugate(k, b)) {
                if (branch_less(k, b)) k = b;
                dup = true;
                break;
            }
        if (!dup) kept.push_back(b);
    }

    long covered = 0;
    for (const Branch& b : kept) covered += b.coords[0].ord();
    if (covered != j0)
        throw irrational_coefficient(
            "branches need coefficients outside Q (covered " + std::to_string(covered) +
            " of " + std::to_string(j0) + " local roots)");

    for (Branch& b : kept) {
        // postcondition: the parametrization annihilates f to the working depth
        Series chk = f.eval_series(b.coords);
        if (!chk.known_zero() && !chk.is_zero_to_trunc())
            throw math_error("puiseux solution fails to annihilate the input");
        out.push_back(std::move(b));
    }

    std::sort(out.begin(), out.end(), branch_less);
    for (size_t i = 0; i < out.size(); ++i) out[i].label = "b" + std::to_string(i + 1);
    return out;
}

}  // namespace tjurina
