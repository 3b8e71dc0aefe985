#include "doctest.h"

#include "surfdef/h1.hpp"
#include "surfdef/properties.hpp"

using namespace sd;

namespace {

const AutomorphismSpec& example() {
    static const AutomorphismSpec spec = load_automorphism_spec(data_path("example15.spec"));
    return spec;
}

} // namespace

TEST_CASE("example spec parses and validates") {
    const auto& s = example();
    CHECK(s.P1.length() == 5);
    CHECK(s.P2.length() == 5);
    CHECK(s.P1.is_chain());
    CHECK(s.pole == 5);
    CHECK_NOTHROW(validate_spec(s));
}

TEST_CASE("dim W = 2N for each tower") {
    CHECK(geometric_basis(example().P1).size() == 10);
    CHECK(geometric_basis(example().P2).size() == 10);
}

TEST_CASE("chart transitions are mutually inverse") {
    const auto& t = example().P1;
    for (std::size_t i = 0; i < t.chart_count(); ++i)
        for (std::size_t j = 0; j < t.chart_count(); ++j) {
            const auto &a = t.chart_name(i), &b = t.chart_name(j);
            CAPTURE(a);
            CAPTURE(b);
            auto fwd = chart_transition(t, a, b), back = chart_transition(t, b, a);
            auto cb = t.chart_coords(j);
            std::array<Var, 2> va{var(t.chart_coords(i)[0]), var(t.chart_coords(i)[1])};
            for (int k = 0; k < 2; ++k)
                CHECK(substitute_pair(back[k], va, fwd) == RatFunc::variable(cb[k]));
        }
}

TEST_CASE("malformed spec is rejected") {
    CHECK_THROWS_AS(parse_automorphism_spec("param alpha\nmatrix A\n1 ; 0\nend\n"), MathError);
}

TEST_CASE("D1 respects the divisor order") {
    const auto& s = example();
    auto DP = standard_exceptional_divisor(s.P1, TowerDivisor());
    CHECK(divisor_leq(s.D1, DP));
}

TEST_CASE("strict tables at one specialization") {
    const auto& s = example();
    auto sp = random_specialization(s, 3);
    auto b = compute_blocks(s, sp);
    for (const std::string name : {"K", "Q", "Z1", "Z2", "tM"}) {
        CAPTURE(name);
        auto d = verify_table(name, s, sp, b, load_table(data_path("golden/" + name + ".tbl")));
        CHECK(d.shape_ok);
        if (name != "Q") CHECK(d.diffs.empty());
    }
    auto M = h1_matrix(b, s.complement);
    CHECK(M.rows() == 22);
}

TEST_CASE("property suites") {
    for (const auto& r : run_property_suites(2024, 200)) {
        CAPTURE(r.name);
        CAPTURE(r.first_failure);
        CHECK(r.cases == 200);
        CHECK(r.ok());
    }
}
