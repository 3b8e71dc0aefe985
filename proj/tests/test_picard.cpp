#include "doctest.h"

#include "surfdef/kummer.hpp"
#include "surfdef/picard.hpp"

#include <random>

using namespace sd;

TEST_CASE("blowup lattice") {
    auto L = blowup_lattice(9);
    CHECK(L.rank() == 10);
    CHECK(L.dot(L.canonical, L.canonical) == 0);
    CHECK(L.dot(L.basis_vector(0), L.basis_vector(0)) == 1);
    CHECK(L.dot(L.basis_vector(3), L.basis_vector(3)) == -1);
}

TEST_CASE("Blanc involution on 15 points") {
    auto L = blowup_lattice(15);
    auto s = blanc_involution(L, {1, 2, 3, 4, 5});
    CHECK(s.preserves(L));
    CHECK((s * s).m == Matrix<Rational>::identity(L.rank()));
    CHECK(s.charpoly() == parse_qpoly("(x-1)^12*(x+1)^4"));
}

TEST_CASE("product of three Blanc involutions") {
    auto L = blowup_lattice(15);
    auto f = blanc_involution(L, {1, 2, 3, 4, 5}) * blanc_involution(L, {6, 7, 8, 9, 10}) *
             blanc_involution(L, {11, 12, 13, 14, 15});
    CHECK(f.charpoly() == parse_qpoly("(x^2-18*x+1)*(x-1)^4*(x+1)^10"));
}

TEST_CASE("Halphen twists are unipotent isometries") {
    auto L = blowup_lattice(9);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> coef(-3, 3), mult(1, 3);
    Matrix<Rational> I = Matrix<Rational>::identity(L.rank());
    for (int k = 0; k < 200; ++k) {
        IntVec a(L.rank(), Rational(0));
        Rational s = 0;
        for (std::size_t i = 0; i + 1 < L.rank(); ++i) {
            a[i] = coef(rng);
            if (i > 0) s += a[i];
        }
        a.back() = -3 * a[0] - s;
        REQUIRE(L.dot(a, L.canonical) == 0);
        auto f = halphen_action(L, a, static_cast<int>(mult(rng)));
        CHECK(f.preserves(L));
        CHECK(f.apply(L.canonical) == L.canonical);
        Matrix<Rational> N = f.m - I;
        CHECK((N * N * N).is_zero_matrix());
    }
}

TEST_CASE("non-isometries are rejected") {
    auto L = blowup_lattice(3);
    LatticeIsometry g{Matrix<Rational>::identity(L.rank())};
    g.m(0, 0) = 2;
    CHECK_FALSE(g.preserves(L));
    CHECK_THROWS_AS(require_isometry(L, g), MathError);
}

TEST_CASE("Kummer Picard polynomial") {
    auto M = parse_quad_mat("1,1;1,2", QuadRing::Eisenstein);
    QPoly p = kummer_pic_charpoly(M);
    CHECK(p.degree() == 13);
    CHECK(factor_over_Q(p).multiplicity(parse_qpoly("x-1")) >= 9);
}
