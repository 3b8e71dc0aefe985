#include "doctest.h"

#include "surfdef/cyclotomic.hpp"
#include "surfdef/factor.hpp"
#include "surfdef/matrix.hpp"
#include "surfdef/mpoly.hpp"
#include "surfdef/numberfield.hpp"

using namespace sd;

TEST_CASE("factor x^2 - 1") {
    auto f = factor_over_Q(parse_qpoly("x^2-1"));
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].first == parse_qpoly("x-1"));
    CHECK(f.factors[1].first == parse_qpoly("x+1"));
}

TEST_CASE("factor degree 22 product") {
    QPoly p = parse_qpoly("(x^2+3*x+1)*(x^2+18*x+1)*(x^2-7*x+1)*(x^2+x+1)*(x-1)^2*(x+1)^4*(x^2-x+1)^4");
    auto f = factor_over_Q(p);
    CHECK(f.expand() == p);
    CHECK(f.factors.size() == 7);
    CHECK(f.multiplicity(parse_qpoly("x^2-x+1")) == 4);
    CHECK(f.multiplicity(parse_qpoly("x+1")) == 4);
}

TEST_CASE("factor needs recombination") {
    // x^4 + 1 splits into 2 or 4 factors modulo every prime
    QPoly p = parse_qpoly("(x^4+1)*(x^4-10*x^2+1)*(3*x-2)");
    auto f = factor_over_Q(p);
    CHECK(f.expand() == p);
    CHECK(f.factors.size() == 3);
}

TEST_CASE("cyclotomic basics") {
    Cyc j = Cyc::zeta(3), i = Cyc::zeta(4);
    CHECK(j * j + j + Cyc(1) == Cyc(0));
    CHECK(i * i == Cyc(-1));
    CHECK(Cyc::sqrt3() * Cyc::sqrt3() == Cyc(3));
    CHECK(is_root_of_unity(j) == 3u);
    CHECK(is_root_of_unity(-j) == 6u);
}

TEST_CASE("rational functions") {
    RatFunc f = parse_ratfunc("(x^2-y^2)/(x-y)");
    CHECK(f == parse_ratfunc("x+y"));
    RatFunc g = parse_ratfunc("1/(x+1) + 1/(x-1)");
    CHECK(g == parse_ratfunc("2*x/(x^2-1)"));
    CHECK(parse_ratfunc(g.to_string()) == g);
    auto c = laurent_coeffs(parse_ratfunc("v/(u*(v-lam1))"), var("u"), RatFunc(0), -1, -1);
    CHECK(c[0] == parse_ratfunc("v/(v-lam1)"));
    auto d = laurent_coeffs(parse_ratfunc("1/u"), var("u"), RatFunc(0), -1, 0);
    CHECK(d[0] == RatFunc(1));
    CHECK(d[1] == RatFunc(0));
}

TEST_CASE("charpoly and jordan") {
    auto m = Matrix<Rational>::from_rows({{0, -1}, {1, -2}});
    CHECK(charpoly(m) == parse_qpoly("x^2+2*x+1"));
    auto js = jordan_structure(m);
    REQUIRE(js.size() == 1);
    CHECK(js[0].sizes == std::vector<int>{2});
}
