#include "doctest.h"

#include "surfdef/kummer.hpp"

#include <random>

using namespace sd;

namespace {

QuadMat eis(const std::string& s) { return parse_quad_mat(s, QuadRing::Eisenstein); }
QuadMat gauss(const std::string& s) { return parse_quad_mat(s, QuadRing::Gauss); }
QPoly h1_poly(const QuadMat& M) { return *rational_poly(kummer_h1_charpoly(KummerAction::from_matrix(M))); }

} // namespace

TEST_CASE("j Id acts trivially on H^1") {
    CHECK(h1_poly(eis("j,0;0,j")) == parse_qpoly("(x-1)^16"));
}

TEST_CASE("i Id acts trivially on H^1") {
    CHECK(h1_poly(gauss("i,0;0,i")) == parse_qpoly("(x-1)^18"));
}

TEST_CASE("eisenstein and gauss degrees") {
    CHECK(kummer_h1_charpoly(KummerAction::from_matrix(eis("1,1;1,2"))).degree() == 16);
    CHECK(kummer_h1_charpoly(KummerAction::from_matrix(gauss("1,1;1,2"))).degree() == 18);
}

TEST_CASE("gauss diagonal matrix diag(1, i)") {
    CHECK(h1_poly(gauss("1,0;0,i")) == parse_qpoly("(x+1)^4*(x^2+1)^7"));
}

TEST_CASE("rigidity of loxodromic and parabolic matrices") {
    CHECK(is_infinitesimally_rigid(KummerAction::from_matrix(eis("1,1;1,2"))));
    CHECK_FALSE(is_infinitesimally_rigid(KummerAction::from_matrix(eis("1,1;0,1"))));
    CHECK_FALSE(is_infinitesimally_rigid(KummerAction::from_matrix(eis("1,3;0,1"))));
}

TEST_CASE("congruence subgroup membership") {
    CHECK(in_congruence_subgroup_H(eis("1,0;0,1")));
    CHECK(in_congruence_subgroup_H(eis("1,3;0,1")));
    CHECK_FALSE(in_congruence_subgroup_H(eis("1,1;0,1")));
    CHECK(in_congruence_subgroup_H(eis("j,0;0,-1-j")));
    CHECK_FALSE(in_congruence_subgroup_H(eis("-1,0;0,-1")));
}

TEST_CASE("Lefschetz trace on H equals 8 Tr(M)") {
    QuadMat M = eis("1,3;0,1") * eis("1,0;3,1");
    REQUIRE(in_congruence_subgroup_H(M));
    auto ab = atiyah_bott_trace(M);
    REQUIRE(ab.pointwise);
    CHECK(*ab.pointwise == ab.closed_form);
    auto Q = kummer_h1_charpoly(KummerAction::from_matrix(M));
    CHECK(ab.closed_form == -Q.coeff(15));
}

TEST_CASE("generator relations") {
    CHECK(kummer_generator(2) * kummer_generator(3) == eis("1,0;0,-j"));
    CHECK(word_matrix({3, 3}) == quad_identity(QuadRing::Eisenstein));
}

TEST_CASE("Cremona degrees of the generators") {
    for (int k = 1; k <= 3; ++k) {
        CAPTURE(k);
        CHECK(kummer_generator_map(k).degree() == cremona_degree(kummer_generator(k)));
    }
    CHECK(cremona_degree(eis("0,1;1,0")) == 2);
}

TEST_CASE("psi_3 is an involution") {
    CHECK(compose_cremona(kummer_generator_map(3), kummer_generator_map(3)).is_identity());
}

TEST_CASE("degree formula agrees with composition on short words") {
    std::vector<std::vector<int>> words;
    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b) words.push_back({a, b});
    for (const auto& w : words) {
        CAPTURE(w[0]);
        CAPTURE(w[1]);
        CHECK(word_map(w).degree() == cremona_degree(word_matrix(w)));
    }
}

TEST_CASE("semigroup decomposition reproduces random products") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> gen(1, 3), len(1, 8);
    for (int k = 0; k < 200; ++k) {
        std::vector<int> w(static_cast<std::size_t>(len(rng)));
        for (auto& x : w) x = gen(rng);
        QuadMat M = word_matrix(w);
        CAPTURE(to_string(M));
        CHECK(word_matrix(semigroup_decompose(M)) == M);
    }
}

TEST_CASE("hom_gcd finds a common factor") {
    auto x = HomPoly::var(0), y = HomPoly::var(1), z = HomPoly::var(2);
    HomPoly g = x * y - z * z;
    HomPoly a = g * (x + y), b = g * (x - z).pow(2);
    HomPoly d = hom_gcd(a, b);
    CHECK(d.degree() == 2);
    CHECK(hom_div(g, d).degree() == 0);
    CHECK(hom_div(a, d) == hom_div(a, g).scaled(hom_div(g, d).terms().begin()->second));
}

TEST_CASE("malformed matrices are rejected") {
    CHECK_THROWS_AS(eis("1,2;3"), MathError);
    CHECK_THROWS_AS(eis("1,q;0,1"), MathError);
}
