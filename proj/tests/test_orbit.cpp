#include "doctest.h"

#include "surfdef/orbit.hpp"

using namespace sd;

namespace {

OrbitData data(const std::string& tau, int a, int b, int c) {
    OrbitData d;
    d.tau = parse_permutation(tau);
    d.n = {a, b, c};
    return d;
}

} // namespace

TEST_CASE("permutation parsing") {
    CHECK(parse_permutation("id") == std::array<int, 3>{0, 1, 2});
    CHECK(parse_permutation("(12)") == std::array<int, 3>{1, 0, 2});
    CHECK(parse_permutation("2,1,3") == parse_permutation("(12)"));
    CHECK(parse_permutation("(123)") == std::array<int, 3>{1, 2, 0});
    CHECK_THROWS_AS(parse_permutation("(14)"), MathError);
    CHECK(all_permutations().size() == 6);
}

TEST_CASE("identity with lengths 3,3,4") {
    auto d = data("id", 3, 3, 4);
    CHECK(is_admissible(d));
    CHECK(mult_root_one(d) == 3);
    CHECK(factor_over_Q(orbit_polys(d).P).multiplicity(parse_qpoly("x-1")) == 3);
}

TEST_CASE("multiplicity of 1 is 4 - |tau| on the admissible grid") {
    int checked = 0;
    for (const auto& tau : all_permutations())
        for (int a = 1; a <= 9; ++a)
            for (int b = 1; b <= 9; ++b)
                for (int c = 1; c <= 9; ++c) {
                    OrbitData d;
                    d.tau = tau;
                    d.n = {a, b, c};
                    if (!is_admissible(d)) {
                        CHECK_THROWS_AS(mult_root_one(d), AdmissibilityViolation);
                        continue;
                    }
                    CAPTURE(d.tau_string());
                    CHECK(mult_root_one(d) == 4 - d.order());
                    ++checked;
                }
    CHECK(checked >= 200);
}

TEST_CASE("cuspidal realization of (12) with lengths 3,4,5") {
    auto R = realize_cuspidal(data("(12)", 3, 4, 5));
    CHECK(R.all_verified());
    CHECK(R.q.degree() > 2);
}

TEST_CASE("cuspidal realization of a 3-cycle") {
    auto R = realize_cuspidal(data("(123)", 3, 4, 5));
    CHECK(R.all_verified());
}

TEST_CASE("equal orbit lengths under the identity force coincident base points") {
    CHECK_THROWS_AS(realize_cuspidal(data("id", 3, 3, 4)), NotRealizable);
}

TEST_CASE("non-admissible data is rejected") {
    auto d = data("(12)", 3, 4, 5);
    d.n = {1, 1, 1};
    if (!is_admissible(d)) CHECK_THROWS_AS(realize_cuspidal(d), MathError);
}

TEST_CASE("theta polynomials") {
    auto cusp = theta_from_multiplier<Rational>(ThetaCase::Cuspidal, Rational(2), Rational(1), 3);
    CHECK(cusp == parse_qpoly("(x-1)*(x-2)*(x-8)"));
    auto gen = theta_from_multiplier<Rational>(ThetaCase::SmoothGeneric, Rational(2), Rational(1), 3);
    CHECK(gen == parse_qpoly("(x-1)*(x-1/2)*(x-1/4)"));
    auto tors = theta_from_multiplier<Rational>(ThetaCase::SmoothTorsion, Rational(1), Rational(3), 4, Rational(-1), 2);
    CHECK(tors == parse_qpoly("(x-3)^2*(x+3)^2"));
    CHECK_THROWS_AS(theta_from_multiplier<Rational>(ThetaCase::Cuspidal, Rational(1), Rational(1), 3), MathError);
}

TEST_CASE("anticanonical assembly degrees") {
    QPoly P = parse_qpoly("(x^2-18*x+1)*(x-1)^4*(x+1)^10");
    QPoly Q = assemble_Qf<Rational>(AnticanonicalCase::Smooth, P, {parse_qpoly("(x+1)^6")}, Rational(1), 1, 15);
    CHECK(Q == parse_qpoly("(x^2-18*x+1)*(x-1)^4*(x+1)^16"));
    CHECK_THROWS_AS(assemble_Qf<Rational>(AnticanonicalCase::Singular, P, {parse_qpoly("x-2")}, std::nullopt, 1, 15),
                    MathError);
    CHECK_THROWS_AS(strip_root_one(parse_qpoly("(x-1)*(x+1)"), 2), NonDivisible);
}
