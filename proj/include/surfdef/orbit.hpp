#pragma once

#include "surfdef/factor.hpp"
#include "surfdef/numberfield.hpp"

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace sd {

class AdmissibilityViolation : public MathError {
public:
    using MathError::MathError;
};
class NoSalemFactor : public MathError {
public:
    using MathError::MathError;
};
class SingularLinearSystem : public MathError {
public:
    using MathError::MathError;
};
// Admissible data whose orbit equations force coincident or collinear base points.
class NotRealizable : public MathError {
public:
    using MathError::MathError;
};
class NonDivisible : public MathError {
public:
    using MathError::MathError;
};

struct OrbitData {
    std::array<int, 3> tau{0, 1, 2}; // zero-based images
    std::array<int, 3> n{3, 3, 3};

    int order() const;
    int total() const { return n[0] + n[1] + n[2]; }
    std::string tau_string() const;
};

// Cycle notation ("id", "(12)", "(132)", "(13)(2)") or one-line images ("2,1,3").
std::array<int, 3> parse_permutation(const std::string& s);
std::vector<std::array<int, 3>> all_permutations();

struct OrbitPolys {
    QPoly p, P;
};
OrbitPolys orbit_polys(const OrbitData& d);
bool is_admissible(const OrbitData& d);
// Multiplicity of (x - 1) in P_tau; throws AdmissibilityViolation on non-admissible data.
int mult_root_one(const OrbitData& d);

struct CuspidalRealization {
    QPoly q;
    std::shared_ptr<const NumberFieldCtx> field;
    NFElem mu, alpha, beta, eps, fixed_point, zeta;
    std::array<NFElem, 3> p_plus, p_minus;
    NFElem third_residue;
    bool eps_verified = false;       // translation factor and p_j^- read off the constructed map
    bool third_verified = false;     // third orbit equation vanishes modulo q
    bool zeta_verified = false;      // zeta * mu^(n1+n2+n3-3) = 1
    bool fixed_point_verified = false;
    bool all_verified() const { return eps_verified && third_verified && zeta_verified && fixed_point_verified; }
};

// Largest-degree non-cyclotomic irreducible factor of P_tau.
QPoly salem_factor(const QPoly& P);

CuspidalRealization realize_cuspidal(const OrbitData& d);

template <class K>
K field_pow(const K& a, int e) {
    K r(1), b = e < 0 ? K(1) / a : a;
    for (unsigned n = static_cast<unsigned>(e < 0 ? -e : e); n; n >>= 1) {
        if (n & 1) r = r * b;
        b = b * b;
    }
    return r;
}

enum class ThetaCase { SmoothNPoint, SmoothGeneric, SmoothTorsion, Cuspidal };
ThetaCase parse_theta_case(const std::string& s);

// Product of (x - e) over the eigenvalue list of the action on sections of a degree n bundle.
// The torsion case uses omega, a primitive ell-th root of unity, each power repeated n/ell times.
template <class K>
UniPoly<K> theta_from_multiplier(ThetaCase c, const K& a, const K& beta, int n, const K& omega = K(1), int ell = 1) {
    if (n < 1) throw MathError("bundle degree must be positive");
    UniPoly<K> x = UniPoly<K>::x(), r(1);
    auto lin = [&](const K& e) { return x - UniPoly<K>(e); };
    switch (c) {
    case ThetaCase::SmoothNPoint:
    case ThetaCase::SmoothGeneric: {
        if (a == K(1)) throw MathError("multiplier must differ from 1");
        K ai = K(1) / a;
        r *= lin(beta);
        int lo = c == ThetaCase::SmoothNPoint ? 2 : 1, hi = c == ThetaCase::SmoothNPoint ? n : n - 1;
        for (int k = lo; k <= hi; ++k) r *= lin(beta * field_pow(ai, k));
        break;
    }
    case ThetaCase::SmoothTorsion: {
        if (ell < 1 || n % ell != 0) throw MathError("torsion order must divide the degree");
        for (int k = 0; k < ell; ++k) r *= lin(beta * field_pow(omega, k)).pow(static_cast<unsigned>(n / ell));
        break;
    }
    case ThetaCase::Cuspidal: {
        if (a == K(1)) throw MathError("multiplier must differ from 1");
        for (int k = 0; k <= n - 2; ++k) r *= lin(beta * field_pow(a, k));
        r *= lin(beta * field_pow(a, n));
        break;
    }
    }
    return r;
}

enum class AnticanonicalCase { Singular, Smooth, Cycle };

template <class K>
UniPoly<K> strip_root_one(const UniPoly<K>& P, int times) {
    UniPoly<K> x1 = UniPoly<K>::x() - UniPoly<K>(K(1)), r = P;
    for (int k = 0; k < times; ++k) {
        auto [q, rem] = r.divmod(x1);
        if (!rem.is_zero()) throw NonDivisible("(x-1)^" + std::to_string(times) + " does not divide P_f");
        r = q;
    }
    return r;
}

// Singular: P*theta; smooth: P/(x-1)*theta*(x-a_f); cycle: P/(x-1)^r * prod theta_i.
// When N > 0 the degree must be 2N - 8.
template <class K>
UniPoly<K> assemble_Qf(AnticanonicalCase c, const UniPoly<K>& P, const std::vector<UniPoly<K>>& thetas,
                       std::optional<K> a_f = std::nullopt, int r = 1, int N = 0) {
    UniPoly<K> Q;
    UniPoly<K> th(1);
    for (const auto& t : thetas) th *= t;
    switch (c) {
    case AnticanonicalCase::Singular:
        Q = P * th;
        break;
    case AnticanonicalCase::Smooth:
        if (!a_f) throw MathError("smooth case needs the multiplier a_f");
        Q = strip_root_one(P, 1) * th * (UniPoly<K>::x() - UniPoly<K>(*a_f));
        break;
    case AnticanonicalCase::Cycle:
        if (r < 1) throw MathError("cycle length must be positive");
        Q = strip_root_one(P, r) * th;
        break;
    }
    if (N > 0 && Q.degree() != 2 * N - 8)
        throw MathError("assembled degree " + std::to_string(Q.degree()) + " differs from 2N-8");
    return Q;
}

} // namespace sd
