#include "surfdef/properties.hpp"

#include "surfdef/cyclotomic.hpp"
#include "surfdef/matrix.hpp"
#include "surfdef/numberfield.hpp"
#include "surfdef/series.hpp"
#include "surfdef/vecfield.hpp"

#include <functional>
#include <random>

namespace sd {

namespace {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}
    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
    Rational rational(long range = 9) {
        long den = integer(1, 5);
        Rational r(integer(-range, range), den);
        r.canonicalize();
        return r;
    }
    Rational nonzero(long range = 9) {
        Rational r;
        do r = rational(range);
        while (r == 0);
        return r;
    }

private:
    std::mt19937_64 rng_;
};

// Runs body once per case; a false return or a MathError counts as a failure.
PropertyReport run_cases(const std::string& name, std::uint64_t seed, int cases,
                         const std::function<bool(Gen&, std::string&)>& body) {
    PropertyReport rep;
    rep.name = name;
    Gen g(seed);
    for (int k = 0; k < cases; ++k) {
        std::string what;
        bool ok = false;
        try {
            ok = body(g, what);
        } catch (const MathError& e) {
            what = std::string("exception: ") + e.what();
        }
        ++rep.cases;
        if (!ok) {
            if (rep.failures++ == 0) rep.first_failure = "case " + std::to_string(k) + ": " + what;
        }
    }
    return rep;
}

template <class K>
bool field_laws(const K& a, const K& b, const K& c, std::string& what) {
    if (!((a + b) + c == a + (b + c)) || !((a * b) * c == a * (b * c))) return what = "associativity", false;
    if (!(a + b == b + a) || !(a * b == b * a)) return what = "commutativity", false;
    if (!(a * (b + c) == a * b + a * c)) return what = "distributivity", false;
    if (!(a - a == K(0)) || !(a + K(0) == a) || !(a * K(1) == a)) return what = "identities", false;
    if (!(b == K(0)) && !(b * (K(1) / b) == K(1))) return what = "inverse", false;
    return true;
}

QPoly random_qpoly(Gen& g, int deg) {
    std::vector<Rational> c;
    for (int i = 0; i <= deg; ++i) c.push_back(g.rational());
    return QPoly(c);
}

Matrix<Rational> random_matrix(Gen& g, std::size_t n, long range = 5) {
    Matrix<Rational> m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = Rational(g.integer(-range, range));
    return m;
}

Matrix<Rational> random_invertible(Gen& g, std::size_t n) {
    for (;;) {
        auto m = random_matrix(g, n);
        if (rank(m) == n) return m;
    }
}

} // namespace

PropertyReport check_field_axioms(std::uint64_t seed, int cases) {
    // Q(t) with t^3 = t + 1 and cyclotomic fields of small conductor.
    auto ctx = make_number_field(parse_qpoly("x^3-x-1"), "t");
    return run_cases("field axioms", seed, cases, [&](Gen& g, std::string& what) {
        Rational a = g.rational(), b = g.rational(), c = g.rational();
        if (!field_laws(a, b, c, what)) return false;
        auto nf = [&]() { return NFElem(ctx, random_qpoly(g, 2)); };
        if (!field_laws(nf(), nf(), nf(), what)) return what = "number field: " + what, false;
        static const unsigned conductors[] = {3, 4, 12};
        unsigned n = conductors[g.integer(0, 2)];
        auto cyc = [&]() {
            Cyc r(0);
            for (int k = 0; k < 4; ++k) r = r + Cyc(g.rational()) * Cyc::zeta(n, k);
            return r;
        };
        Cyc x = cyc(), y = cyc(), z = cyc();
        if (!field_laws(x, y, z, what)) return what = "cyclotomic: " + what, false;
        if (!(x.conj().conj() == x) || !((x * y).conj() == x.conj() * y.conj())) return what = "conjugation", false;
        return true;
    });
}

PropertyReport check_laurent_resummation(std::uint64_t seed, int cases) {
    using Ser = Series<Rational>;
    using D = Dual<Rational>;
    return run_cases("Laurent re-summation", seed, cases, [](Gen& g, std::string& what) {
        auto poly = [&](int val, int deg) {
            Ser s(0);
            for (int e = val; e <= val + deg; ++e) {
                D c(g.rational(), g.rational());
                if (e == val && c.a == 0) c.a = 1;
                s = s + Ser(e, {c}, Ser::kExact);
            }
            return s;
        };
        int vp = static_cast<int>(g.integer(0, 3)), vq = static_cast<int>(g.integer(0, 3));
        Ser p = poly(vp, static_cast<int>(g.integer(0, 4))), q = poly(vq, static_cast<int>(g.integer(0, 4)));
        Ser s = p / q;
        if (s.valuation() != vp - vq) return what = "valuation", false;
        Ser back = s * q - p;
        for (int e = back.valuation(); e < back.precision() && e < vp + 30; ++e) {
            D c = back.coeff(e);
            if (!c.zero()) return what = "coefficient U^" + std::to_string(e), false;
        }
        if (back.precision() <= vp + 10) return what = "precision too low", false;
        return true;
    });
}

PropertyReport check_cayley_hamilton(std::uint64_t seed, int cases) {
    return run_cases("Cayley-Hamilton", seed, cases, [](Gen& g, std::string& what) {
        std::size_t n = static_cast<std::size_t>(g.integer(1, 6));
        Matrix<Rational> m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = g.rational();
        QPoly chi = charpoly(m);
        if (chi.degree() != static_cast<int>(n) || chi.lead() != 1) return what = "degree", false;
        if (!poly_of_matrix(chi, m).is_zero_matrix()) return what = "chi(M) != 0", false;
        if (chi.coeff(0) != (n % 2 ? -determinant(m) : determinant(m))) return what = "constant term", false;
        return true;
    });
}

PropertyReport check_block_triangular_inverse(std::uint64_t seed, int cases) {
    return run_cases("block-triangular invertibility", seed, cases, [](Gen& g, std::string& what) {
        std::size_t a = static_cast<std::size_t>(g.integer(1, 4)), b = static_cast<std::size_t>(g.integer(1, 4));
        auto A = random_invertible(g, a), B = random_invertible(g, b);
        Matrix<Rational> C(a, b);
        for (std::size_t i = 0; i < a; ++i)
            for (std::size_t j = 0; j < b; ++j) C(i, j) = g.rational();
        Matrix<Rational> M(a + b, a + b);
        M.set_block(0, 0, A);
        M.set_block(0, a, C);
        M.set_block(a, a, B);
        auto inv = inverse(M);
        if (!inv) return what = "not invertible", false;
        if (!(M * *inv == Matrix<Rational>::identity(a + b))) return what = "M M^-1 != I", false;
        if (!inv->block(a, 0, b, a).is_zero_matrix()) return what = "inverse not block triangular", false;
        if (!(inv->block(0, 0, a, a) == *inverse(A)) || !(inv->block(a, a, b, b) == *inverse(B)))
            return what = "diagonal blocks of the inverse", false;
        if (determinant(M) != determinant(A) * determinant(B)) return what = "determinant", false;
        return true;
    });
}

PropertyReport check_pushforward_functoriality(std::uint64_t seed, int cases) {
    return run_cases("pushforward functoriality", seed, cases, [](Gen& g, std::string& what) {
        using H = HPoly<Rational>;
        using BM = BirationalMap<Rational>;
        // affine maps of the chart x = 1
        auto linear = [&]() {
            Matrix<Rational> a(3, 3);
            a(0, 0) = 1;
            a.set_block(1, 1, random_invertible(g, 2));
            a(1, 0) = Rational(g.integer(-3, 3));
            a(2, 0) = Rational(g.integer(-3, 3));
            return BM::linear(a, *inverse(a));
        };
        // (x^2 : xy : xz + c y^2), the triangular automorphism (y, z + c y^2) of the chart x = 1
        auto triangular = [&]() {
            Rational c = g.nonzero();
            H x = H::coordinate(0), y = H::coordinate(1), z = H::coordinate(2);
            return BM({x * x, x * y, x * z + (y * y).scaled(c)}, {x * x, x * y, x * z - (y * y).scaled(c)});
        };
        auto pick = [&]() { return g.integer(0, 1) ? linear() : triangular(); };
        BM h1 = pick(), h2 = pick();
        auto ypoly = [&]() {
            MPoly r(0);
            MPoly y = MPoly::variable("y"), z = MPoly::variable("z");
            for (unsigned i = 0; i <= 2; ++i)
                for (unsigned j = 0; i + j <= 2; ++j) r = r + (y.pow(i) * z.pow(j)).scaled(g.rational(3));
            return r;
        };
        MeroVectorField f;
        f.c1 = RatFunc(ypoly());
        f.c2 = RatFunc(ypoly());
        MeroVectorField lhs = pushforward(f, h2.after(h1));
        MeroVectorField rhs = pushforward(pushforward(f, h1), h2);
        if (!(lhs == rhs)) return what = "(h2 h1)_* != h2_* h1_* on " + f.to_string(), false;
        MeroVectorField round = pushforward(pushforward(f, h1), h1.inverse());
        if (!(round == f)) return what = "h^-1_* h_* != id", false;
        return true;
    });
}

std::vector<PropertyReport> run_property_suites(std::uint64_t seed, int cases) {
    return {check_field_axioms(seed, cases), check_laurent_resummation(seed + 1, cases),
            check_cayley_hamilton(seed + 2, cases), check_block_triangular_inverse(seed + 3, cases),
            check_pushforward_functoriality(seed + 4, cases)};
}

} // namespace sd
