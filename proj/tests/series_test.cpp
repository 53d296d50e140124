#include "tjurina/series.hpp"

#include <random>

#include "doctest.h"
#include "tjurina/errors.hpp"

using namespace tjurina;

namespace {
Series random_series(std::mt19937& rng, long maxdeg, bool exact) {
    Series s = Series::zero_truncated(exact ? Series::kExact : maxdeg);
    std::uniform_int_distribution<long> deg(0, maxdeg);
    std::uniform_int_distribution<long> coef(-4, 4);
    for (int i = 0; i < 5; ++i) s.set_coeff(deg(rng), rat_from_long(coef(rng)));
    return s;
}
}  // namespace

TEST_CASE("monomial basics") {
    Series t3 = Series::monomial(3, rat_from_long(2));
    CHECK(t3.ord() == 3);
    CHECK(t3.exact());
    CHECK(t3.coeff(3) == 2);
    CHECK(t3.coeff(100) == 0);
    CHECK(rat_is_zero(Series::zero_truncated(5).coeff(4)));
    CHECK(Series::zero_truncated(Series::kExact).ord() == Series::kOrdTop);
}

TEST_CASE("truncation window accounting") {
    Series a = Series::monomial(0, 1, 3);  // 1 + O(t^4)
    Series b = Series::monomial(2, 1);     // t^2 exact
    Series p = a * b;
    // unknown part of a enters at degree 4 + ord(b) = 6
    CHECK(p.trunc() == 5);
    CHECK(p.coeff(2) == 1);
    CHECK_THROWS_AS(p.coeff(6), truncation_too_small);

    Series s = a + b;
    CHECK(s.trunc() == 3);
    CHECK(s.coeff(2) == 1);
}

TEST_CASE("coeff past truncation throws") {
    Series a = Series::monomial(1, 1, 4);
    CHECK_NOTHROW(a.coeff(4));
    CHECK_THROWS_AS(a.coeff(5), truncation_too_small);
}

TEST_CASE("ring identities on random series") {
    std::mt19937 rng(7);
    for (int it = 0; it < 40; ++it) {
        Series a = random_series(rng, 9, it % 2);
        Series b = random_series(rng, 9, (it / 2) % 2);
        Series c = random_series(rng, 9, true);
        CHECK(((a + b) + c) == (a + (b + c)));
        CHECK((a + b) == (b + a));
        CHECK((a * b) == (b * a));
        Series lhs = a * (b + c);
        Series rhs = a * b + a * c;
        // distributivity up to the common window
        long w = std::min(lhs.trunc(), rhs.trunc());
        CHECK((lhs - rhs).truncated(w).is_zero_to_trunc());
    }
}

TEST_CASE("order is additive for products") {
    std::mt19937 rng(11);
    for (int it = 0; it < 30; ++it) {
        Series a = random_series(rng, 8, true);
        Series b = random_series(rng, 8, true);
        if (a.known_zero() || b.known_zero()) continue;
        CHECK((a * b).ord() == a.ord() + b.ord());
    }
}

TEST_CASE("derivative satisfies the product rule") {
    std::mt19937 rng(3);
    for (int it = 0; it < 20; ++it) {
        Series a = random_series(rng, 7, true);
        Series b = random_series(rng, 7, true);
        CHECK(((a * b).derivative() == a.derivative() * b + a * b.derivative()));
    }
}

TEST_CASE("composition") {
    // (t + t^2) o t^2 = t^2 + t^4
    Series f = Series::monomial(1, 1) + Series::monomial(2, 1);
    Series u = Series::monomial(2, 1);
    Series g = f.compose(u);
    CHECK(g.exact());
    CHECK(g.coeff(2) == 1);
    CHECK(g.coeff(4) == 1);
    CHECK(g.coeff(3) == 0);

    // truncated outer: unknown tail of f starts at deg 4, enters at 4*2
    Series ft = Series::monomial(1, 1, 3);
    Series gt = ft.compose(u);
    CHECK(gt.trunc() == 7);
    CHECK(gt.coeff(2) == 1);

    // reparametrization t -> t(1+t) is invertible: ord preserved
    Series rep = Series::monomial(1, 1) + Series::monomial(2, 1);
    std::mt19937 rng(5);
    for (int it = 0; it < 10; ++it) {
        Series a = random_series(rng, 6, true);
        if (a.known_zero()) continue;
        CHECK(a.compose(rep).ord() == a.ord());
    }
}

TEST_CASE("composition rejects units") {
    Series u = Series::monomial(0, 1) + Series::monomial(1, 1);
    Series f = Series::monomial(1, 1);
    CHECK_THROWS_AS(f.compose(u), math_error);
}

TEST_CASE("power") {
    Series a = Series::monomial(1, 1) + Series::monomial(2, 1);  // t(1+t)
    Series p = a.pow(3);
    CHECK(p.coeff(3) == 1);
    CHECK(p.coeff(4) == 3);
    CHECK(p.coeff(5) == 3);
    CHECK(p.coeff(6) == 1);
    CHECK(a.pow(0).coeff(0) == 1);
}

TEST_CASE("shift multiplies by a monomial") {
    Series a = Series::monomial(2, 3, 5);
    Series s = a.shifted(4);
    CHECK(s.ord() == 6);
    CHECK(s.trunc() == 9);
    CHECK(s.coeff(6) == 3);
}

TEST_CASE("string form") {
    Series a = Series::monomial(0, rat_parse("-1/2")) + Series::monomial(3, 2);
    CHECK(a.str() == "-1/2 + 2*t^3");
    CHECK(Series::zero_truncated(4).str() == "0 + O(t^5)");
}
