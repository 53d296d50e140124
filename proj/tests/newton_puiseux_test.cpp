#include "tjurina/newton_puiseux.hpp"

#include "doctest.h"
#include "tjurina/errors.hpp"
#include "tjurina/expr.hpp"

using namespace tjurina;

static const std::vector<std::string> XY{"X", "Y"};
static const std::vector<std::string> Z1{"Z"};

static const char* kThreeBranch =
    "(Y^3 - X^7)*(Y^3 - 3*X^5*Y - X^7 - X^8)*(Y^4 - 2*X^5*Y^2 - 4*X^7*Y - X^9 + X^10)";

TEST_CASE("polygon of the cusp") {
    NewtonPolygon np = newton_polygon(parse_polynomial("Y^2 - X^3", XY));
    REQUIRE(np.edges.size() == 1);
    CHECK(np.edges[0].p == 3);
    CHECK(np.edges[0].q == 2);
    CHECK(np.edges[0].g == 1);
    CHECK(np.edges[0].psi == parse_polynomial("Z^2 - 1", Z1));
}

TEST_CASE("polygon with an interior lattice point on an edge") {
    NewtonPolygon np = newton_polygon(parse_polynomial(kThreeBranch, XY));
    REQUIRE(np.edges.size() == 2);
    CHECK(np.edges[0].i0 == 0);
    CHECK(np.edges[0].j0 == 10);
    CHECK(np.edges[0].i1 == 9);
    CHECK(np.edges[0].j1 == 6);
    CHECK(np.edges[0].p == 9);
    CHECK(np.edges[0].q == 4);
    CHECK(np.edges[0].psi == parse_polynomial("Z^4 - 1", Z1));
    CHECK(np.edges[1].i1 == 23);
    CHECK(np.edges[1].p == 7);
    CHECK(np.edges[1].q == 3);
    CHECK(np.edges[1].g == 2);
    CHECK(np.edges[1].psi == parse_polynomial("-Z^6 + 2*Z^3 - 1", Z1));
}

TEST_CASE("points above the boundary do not create edges") {
    // (5,1) lies above the segment from (0,3) to (7,0)
    NewtonPolygon np = newton_polygon(parse_polynomial("Y^3 - 3*X^5*Y - X^7 - X^8", XY));
    REQUIRE(np.edges.size() == 1);
    CHECK(np.edges[0].p == 7);
    CHECK(np.edges[0].q == 3);
    CHECK(np.edges[0].psi == parse_polynomial("Z^3 - 1", Z1));
}

TEST_CASE("cusp expansion") {
    auto br = puiseux_branches(parse_polynomial("Y^2 - X^3", XY), 30);
    REQUIRE(br.size() == 1);
    CHECK(br[0].coords[0] == parse_series("t^2"));
    CHECK(br[0].coords[1] == parse_series("t^3"));
    CHECK(br[0].label == "b1");
}

TEST_CASE("smooth and axis branches") {
    auto node = puiseux_branches(parse_polynomial("X*Y", XY), 10);
    REQUIRE(node.size() == 2);
    CHECK(node[0].coords[0] == parse_series("t"));
    CHECK(node[0].coords[1] == parse_series("0"));
    CHECK(node[1].coords[0] == parse_series("0"));
    CHECK(node[1].coords[1] == parse_series("t"));

    auto lines = puiseux_branches(parse_polynomial("Y^2 - X^2", XY), 10);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0].coords[1] == parse_series("-t"));
    CHECK(lines[1].coords[1] == parse_series("t"));
}

TEST_CASE("tacnode expansion") {
    auto br = puiseux_branches(parse_polynomial("(Y - X^2)*(Y + X^2)", XY), 10);
    REQUIRE(br.size() == 2);
    CHECK(br[0].coords[1] == parse_series("-t^2"));
    CHECK(br[1].coords[1] == parse_series("t^2"));
}

TEST_CASE("repeated root separated by recursion") {
    auto br = puiseux_branches(parse_polynomial("Y^3 - 3*X^5*Y - X^7 - X^8", XY), 40);
    REQUIRE(br.size() == 1);
    CHECK(br[0].coords[0] == parse_series("t^3"));
    CHECK(br[0].coords[1] == parse_series("t^7 + t^8"));
    CHECK(br[0].coords[1].exact());
}

TEST_CASE("conjugate parametrizations are merged") {
    auto br =
        puiseux_branches(parse_polynomial("Y^4 - 2*X^5*Y^2 - 4*X^7*Y - X^9 + X^10", XY), 40);
    REQUIRE(br.size() == 1);
    CHECK(br[0].coords[0] == parse_series("t^4"));
    CHECK(br[0].coords[1] == parse_series("t^9 + t^10"));
}

TEST_CASE("three branch curve in canonical order") {
    auto br = puiseux_branches(parse_polynomial(kThreeBranch, XY), 120);
    REQUIRE(br.size() == 3);
    CHECK(br[0].coords[0] == parse_series("t^3"));
    CHECK(br[0].coords[1] == parse_series("t^7"));
    CHECK(br[1].coords[0] == parse_series("t^3"));
    CHECK(br[1].coords[1] == parse_series("t^7 + t^8"));
    CHECK(br[2].coords[0] == parse_series("t^4"));
    CHECK(br[2].coords[1] == parse_series("t^9 + t^10"));
    for (const auto& b : br) {
        CHECK(b.coords[0].exact());
        CHECK(b.coords[1].exact());
    }
    CHECK(br[0].label == "b1");
    CHECK(br[2].label == "b3");
}

TEST_CASE("infinite series branch is truncated honestly") {
    auto br = puiseux_branches(parse_polynomial("Y^2 - X^3 - X^4", XY), 20);
    REQUIRE(br.size() == 1);
    const Series& y = br[0].coords[1];
    CHECK_FALSE(y.exact());
    CHECK(y.coeff(3) == 1);
    CHECK(y.coeff(5) == rat_parse("1/2"));
    CHECK(y.coeff(7) == -rat_parse("1/8"));
    // substitute back: zero through the window
    MPoly f = parse_polynomial("Y^2 - X^3 - X^4", XY);
    CHECK(f.eval_series(br[0].coords).is_zero_to_trunc());
}

TEST_CASE("inputs that are not reduced or not rational") {
    CHECK_THROWS_AS(puiseux_branches(parse_polynomial("(Y - X^2)*(Y - X^2)", XY), 10),
                    not_square_free);
    CHECK_THROWS_AS(puiseux_branches(parse_polynomial("X^2*Y - X^2", XY), 10), not_square_free);
    CHECK_THROWS_AS(puiseux_branches(parse_polynomial("Y^2 - 2*X^3", XY), 10),
                    irrational_coefficient);
    CHECK_THROWS_AS(puiseux_branches(parse_polynomial("1 + X + Y", XY), 10), input_error);
    CHECK_THROWS_AS(puiseux_branches(MPoly(2), 10), zero_polynomial);
}

TEST_CASE("vertical branch bookkeeping") {
    auto only = puiseux_branches(parse_polynomial("X", XY), 10);
    REQUIRE(only.size() == 1);
    CHECK(only[0].coords[0].known_zero());
    CHECK(only[0].coords[1] == parse_series("t"));

    auto mixed = puiseux_branches(parse_polynomial("X*(Y - X)", XY), 10);
    REQUIRE(mixed.size() == 2);
    CHECK(mixed[0].coords[0] == parse_series("t"));
    CHECK(mixed[0].coords[1] == parse_series("t"));
    CHECK(mixed[1].coords[0].known_zero());
}

TEST_CASE("every reported branch annihilates the input") {
    for (const char* src : {"Y^2 - X^3", "Y^3 - X^5", kThreeBranch}) {
        MPoly f = parse_polynomial(src, XY);
        for (const auto& b : puiseux_branches(f, 60)) {
            Series s = f.eval_series(b.coords);
            CHECK(s.is_zero_to_trunc());
        }
    }
}
