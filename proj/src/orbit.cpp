#include "surfdef/orbit.hpp"

#include "surfdef/matrix.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace sd {

int OrbitData::order() const {
    std::array<int, 3> cur = tau;
    int k = 1;
    while (cur != std::array<int, 3>{0, 1, 2}) {
        for (auto& c : cur) c = tau[c];
        ++k;
    }
    return k;
}

std::string OrbitData::tau_string() const {
    std::string out;
    std::array<bool, 3> seen{};
    for (int s = 0; s < 3; ++s) {
        if (seen[s] || tau[s] == s) continue;
        out += "(";
        for (int c = s; !seen[c]; c = tau[c]) {
            seen[c] = true;
            out += std::to_string(c + 1);
        }
        out += ")";
    }
    return out.empty() ? "id" : out;
}

std::array<int, 3> parse_permutation(const std::string& s) {
    std::array<int, 3> t{0, 1, 2};
    if (s == "id" || s == "()" || s.empty()) return t;
    auto bad = [&]() { return MathError("malformed permutation: " + s); };
    if (s.find(',') != std::string::npos) {
        std::istringstream in(s);
        std::string tok;
        std::set<int> used;
        for (int i = 0; i < 3; ++i) {
            if (!std::getline(in, tok, ',')) throw bad();
            int v = std::stoi(tok);
            if (v < 1 || v > 3 || !used.insert(v).second) throw bad();
            t[i] = v - 1;
        }
        if (std::getline(in, tok, ',')) throw bad();
        return t;
    }
    std::set<int> used;
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '(') throw bad();
        std::vector<int> cyc;
        for (++i; i < s.size() && s[i] != ')'; ++i) {
            if (s[i] < '1' || s[i] > '3') throw bad();
            int v = s[i] - '1';
            if (!used.insert(v).second) throw bad();
            cyc.push_back(v);
        }
        if (i == s.size() || cyc.empty()) throw bad();
        ++i;
        for (std::size_t k = 0; k < cyc.size(); ++k) t[cyc[k]] = cyc[(k + 1) % cyc.size()];
    }
    return t;
}

std::vector<std::array<int, 3>> all_permutations() {
    std::vector<std::array<int, 3>> out;
    std::array<int, 3> t{0, 1, 2};
    do out.push_back(t);
    while (std::next_permutation(t.begin(), t.end()));
    return out;
}

OrbitPolys orbit_polys(const OrbitData& d) {
    for (int v : d.n)
        if (v < 1) throw MathError("orbit lengths must be positive");
    QPoly x = QPoly::x(), one(1);
    QPoly p = one - x.scaled(Rational(2));
    for (int j = 0; j < 3; ++j) {
        auto e = static_cast<std::size_t>(d.n[j]);
        if (d.tau[j] == j)
            p += QPoly::monomial(Rational(1), e + 1);
        else
            p += QPoly::monomial(Rational(1), e) * (one - x);
    }
    std::size_t N = 1 + static_cast<std::size_t>(d.total());
    QPoly P = p.reversed(N) + (d.order() % 2 ? -p : p);
    return {p, P};
}

bool is_admissible(const OrbitData& d) {
    const auto& n = d.n;
    if (n[0] == n[1] && n[1] == n[2] && d.order() != 1) return false;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j && n[i] == n[j] && d.tau[i] == j && d.tau[j] == i) return false;
    if (*std::min_element(n.begin(), n.end()) < 3) return false;
    return *std::max_element(n.begin(), n.end()) >= 4;
}

int mult_root_one(const OrbitData& d) {
    if (!is_admissible(d)) throw AdmissibilityViolation("orbit data " + d.tau_string() + " is not admissible");
    return root_multiplicity(orbit_polys(d).P, Rational(1));
}

QPoly salem_factor(const QPoly& P) {
    auto f = factor_over_Q(P);
    std::optional<QPoly> best;
    for (const auto& [g, m] : f.factors)
        if (g.degree() > 0 && !is_cyclotomic(g) && (!best || g.degree() > best->degree())) best = g;
    if (!best) throw NoSalemFactor("all irreducible factors of P_tau are cyclotomic");
    return best->monic();
}

namespace {

using NFPoly = UniPoly<NFElem>;

// Affine form c0 + c1 alpha + c2 beta.
struct Affine {
    NFElem c0, c1, c2;
    NFElem at(const NFElem& a, const NFElem& b) const { return c0 + c1 * a + c2 * b; }
};

template <class F>
Affine affine_of(F f) {
    NFElem z = f(NFElem(0), NFElem(0));
    return {z, f(NFElem(1), NFElem(0)) - z, f(NFElem(0), NFElem(1)) - z};
}

std::array<NFElem, 3> cubic_point(const NFElem& t) { return {t, NFElem(1), t * t * t}; }

bool proportional(const std::array<NFElem, 3>& a, const std::array<NFElem, 3>& b) {
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (a[i] * b[j] != a[j] * b[i]) return false;
    return !(a[0].is_zero() && a[1].is_zero() && a[2].is_zero());
}

} // namespace

CuspidalRealization realize_cuspidal(const OrbitData& d) {
    if (!is_admissible(d)) throw AdmissibilityViolation("orbit data " + d.tau_string() + " is not admissible");
    CuspidalRealization R;
    R.q = salem_factor(orbit_polys(d).P);
    R.field = make_number_field(R.q, "mu");
    const NFElem mu = NFElem::generator(R.field), one(1), three(3);
    R.mu = mu;

    auto orbit_eq = [&](int i) {
        return affine_of([&, i](const NFElem& a, const NFElem& b) {
            std::array<NFElem, 3> pp{one, a, b};
            NFElem eps = (one + a + b) * mu / three;
            NFElem fix = eps / (one - mu);
            NFElem pm = mu * pp[i] - eps - eps;
            return mu.pow(d.n[i] - 1) * (pm - fix) + fix - pp[d.tau[i]];
        });
    };
    Affine e1 = orbit_eq(0), e2 = orbit_eq(1), e3 = orbit_eq(2);
    NFElem det = e1.c1 * e2.c2 - e1.c2 * e2.c1;
    if (det.is_zero()) throw SingularLinearSystem("the first two orbit equations are degenerate");
    R.alpha = (-e1.c0 * e2.c2 + e1.c2 * e2.c0) / det;
    R.beta = (-e1.c1 * e2.c0 + e1.c0 * e2.c1) / det;
    if (!e1.at(R.alpha, R.beta).is_zero() || !e2.at(R.alpha, R.beta).is_zero())
        throw MathError("orbit equation solve failed");
    R.third_residue = e3.at(R.alpha, R.beta);
    R.third_verified = R.third_residue.is_zero();

    R.p_plus = {one, R.alpha, R.beta};
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (R.p_plus[i] == R.p_plus[j])
                throw NotRealizable("orbit equations force p" + std::to_string(i + 1) + "^+ = p" + std::to_string(j + 1) +
                                    "^+ for " + d.tau_string());
    if ((one + R.alpha + R.beta).is_zero()) throw NotRealizable("orbit equations force collinear base points");
    R.eps = (one + R.alpha + R.beta) * mu / three;
    R.fixed_point = R.eps / (one - mu);
    for (int j = 0; j < 3; ++j) R.p_minus[j] = mu * R.p_plus[j] - R.eps - R.eps;

    // f = M o sigma o T^{-1}, T sending the coordinate points to p_j^+.
    Matrix<NFElem> T(3, 3);
    for (int j = 0; j < 3; ++j) {
        auto c = cubic_point(R.p_plus[j]);
        for (int i = 0; i < 3; ++i) T(i, j) = c[i];
    }
    auto Ti = inverse(T);
    if (!Ti) throw NonGenericParameter("base points of the quadratic map are collinear");

    // sigma(T^{-1}(t : 1 : t^3)) divided by (t - p1)(t - p2)(t - p3) is the cubic parametrization
    NFPoly t = NFPoly::x();
    std::array<NFPoly, 3> v{t, NFPoly(one), t * t * t}, u;
    for (int i = 0; i < 3; ++i) {
        u[i] = NFPoly();
        for (int k = 0; k < 3; ++k) u[i] += v[k].scaled((*Ti)(i, k));
    }
    NFPoly common = (t - NFPoly(R.p_plus[0])) * (t - NFPoly(R.p_plus[1])) * (t - NFPoly(R.p_plus[2]));
    std::array<NFPoly, 3> g{u[1] * u[2], u[0] * u[2], u[0] * u[1]};
    Matrix<NFElem> C(3, 4), D(3, 4);
    for (int i = 0; i < 3; ++i) {
        auto [qq, rem] = g[i].divmod(common);
        if (!rem.is_zero()) throw MathError("base points are not simple on the cubic image");
        for (int k = 0; k < 4; ++k) C(i, k) = qq.coeff(k);
    }
    NFPoly s = t.scaled(mu) + NFPoly(R.eps);
    std::array<NFPoly, 3> target{s, NFPoly(one), s * s * s};
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 4; ++k) D(i, k) = target[i].coeff(k);
    std::optional<Matrix<NFElem>> M;
    for (int drop = 3; drop >= 0 && !M; --drop) {
        std::vector<std::size_t> cols;
        for (std::size_t k = 0; k < 4; ++k)
            if (static_cast<int>(k) != drop) cols.push_back(k);
        Matrix<NFElem> Cs(3, 3), Ds(3, 3);
        for (std::size_t k = 0; k < 3; ++k)
            for (std::size_t i = 0; i < 3; ++i) {
                Cs(i, k) = C(i, cols[k]);
                Ds(i, k) = D(i, cols[k]);
            }
        if (auto Ci = inverse(Cs)) M = Ds * *Ci;
    }
    if (!M) throw MathError("image cubic is degenerate");
    bool m_consistent = (*M * C) == D;

    // the line through p_k^+, p_l^+ is contracted onto column j of M, which must be p_j^-
    bool contractions = true;
    for (int j = 0; j < 3; ++j)
        contractions = contractions && proportional({(*M)(0, j), (*M)(1, j), (*M)(2, j)}, cubic_point(R.p_minus[j]));
    R.eps_verified = m_consistent && contractions;

    // differential at the fixed point in the chart y = 1 with coordinates (x, z)
    std::array<NFElem, 3> P0 = cubic_point(R.fixed_point), uu, dux, duz;
    for (int i = 0; i < 3; ++i) {
        uu[i] = dux[i] = duz[i] = NFElem(0);
        for (int k = 0; k < 3; ++k) uu[i] = uu[i] + (*Ti)(i, k) * P0[k];
        dux[i] = (*Ti)(i, 0);
        duz[i] = (*Ti)(i, 2);
    }
    auto sig = [](const std::array<NFElem, 3>& w) { return std::array<NFElem, 3>{w[1] * w[2], w[0] * w[2], w[0] * w[1]}; };
    auto dsig = [&](const std::array<NFElem, 3>& dw) {
        return std::array<NFElem, 3>{dw[1] * uu[2] + uu[1] * dw[2], dw[0] * uu[2] + uu[0] * dw[2],
                                     dw[0] * uu[1] + uu[0] * dw[1]};
    };
    auto apply_M = [&](const std::array<NFElem, 3>& w) {
        std::array<NFElem, 3> r;
        for (int i = 0; i < 3; ++i) r[i] = (*M)(i, 0) * w[0] + (*M)(i, 1) * w[1] + (*M)(i, 2) * w[2];
        return r;
    };
    auto f = apply_M(sig(uu)), fx = apply_M(dsig(dux)), fz = apply_M(dsig(duz));
    R.fixed_point_verified = proportional(f, P0);
    if (f[1].is_zero()) throw MathError("fixed point maps to the line at infinity");
    auto quot = [&](int a, const std::array<NFElem, 3>& df) { return (df[a] * f[1] - f[a] * df[1]) / (f[1] * f[1]); };
    NFElem j00 = quot(0, fx), j01 = quot(0, fz), j10 = quot(2, fx), j11 = quot(2, fz);
    NFElem tr = j00 + j11, dt = j00 * j11 - j01 * j10;
    bool mu_eigen = (mu * mu - tr * mu + dt).is_zero();
    R.zeta = tr - mu;
    R.zeta_verified = mu_eigen && (R.zeta * mu.pow(d.total() - 3) == one);
    return R;
}

ThetaCase parse_theta_case(const std::string& s) {
    if (s == "smooth-n[p]" || s == "smooth-np") return ThetaCase::SmoothNPoint;
    if (s == "smooth-generic") return ThetaCase::SmoothGeneric;
    if (s == "smooth-torsion") return ThetaCase::SmoothTorsion;
    if (s == "cuspidal") return ThetaCase::Cuspidal;
    throw MathError("unsupported case tag " + s);
}

} // namespace sd
