#include "surfdef/kummer.hpp"

#include <algorithm>
#include <sstream>

namespace sd {

// ---- 2x2 matrices over Z[j] or Z[i] ----

QuadMat make_quad_mat(const QuadInt& a, const QuadInt& b, const QuadInt& c, const QuadInt& d) {
    if (a.ring != b.ring || a.ring != c.ring || a.ring != d.ring) throw MathError("mixed quadratic rings");
    return {{{a, b}, {c, d}}};
}

QuadMat quad_identity(QuadRing ring) { return make_quad_mat(QuadInt(ring, 1), QuadInt(ring, 0), QuadInt(ring, 0), QuadInt(ring, 1)); }

QuadMat operator*(const QuadMat& x, const QuadMat& y) {
    QuadMat r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
    return r;
}

bool operator==(const QuadMat& x, const QuadMat& y) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (x[i][j] != y[i][j]) return false;
    return true;
}

QuadInt det(const QuadMat& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
QuadInt trace(const QuadMat& m) { return m[0][0] + m[1][1]; }

QuadMat inverse(const QuadMat& m) {
    QuadInt d = det(m);
    if (!d.is_unit()) throw MathError("matrix is not invertible over the ring");
    QuadInt di = *QuadInt(d.ring, 1).divexact(d);
    return make_quad_mat(m[1][1] * di, -(m[0][1] * di), -(m[1][0] * di), m[0][0] * di);
}

QuadMat parse_quad_mat(const std::string& s, QuadRing ring) {
    std::vector<QuadInt> e;
    std::string cur;
    int rows = 1;
    for (char ch : s + ";") {
        if (ch == ',' || ch == ';') {
            if (cur.empty()) throw MathError("empty matrix entry in " + s);
            e.push_back(parse_quadint(cur, ring));
            cur.clear();
            if (ch == ';' && e.size() != 2u * static_cast<unsigned>(rows)) throw MathError("matrix must be 2x2: " + s);
            if (ch == ';') ++rows;
        } else if (ch != ' ') {
            cur += ch;
        }
    }
    if (e.size() != 4) throw MathError("matrix must be 2x2: " + s);
    return make_quad_mat(e[0], e[1], e[2], e[3]);
}

std::string to_string(const QuadMat& m) {
    return m[0][0].to_string() + "," + m[0][1].to_string() + ";" + m[1][0].to_string() + "," + m[1][1].to_string();
}

// ---- torsion points ----

namespace {

// Coordinate (A + B w) / k modulo the lattice, stored as (A mod k, B mod k).
struct Torsion {
    int A, B;
    bool operator==(const Torsion& o) const { return A == o.A && B == o.B; }
};
using TPoint = std::array<Torsion, 2>;

int modk(const Integer& v, int k) {
    Integer r = v % k;
    if (r < 0) r += k;
    return static_cast<int>(r.get_si());
}

Torsion mul(const QuadInt& m, const Torsion& t, int k) {
    QuadInt r = m * QuadInt(m.ring, t.A, t.B);
    return {modk(r.a, k), modk(r.b, k)};
}

TPoint act(const QuadMat& M, const TPoint& p, int k) {
    TPoint r;
    for (int i = 0; i < 2; ++i) {
        Torsion a = mul(M[i][0], p[0], k), b = mul(M[i][1], p[1], k);
        r[i] = {(a.A + b.A) % k, (a.B + b.B) % k};
    }
    return r;
}

// j-fixed points: 0, 2/3 + j/3, 1/3 + 2j/3 in both coordinates
const std::vector<TPoint>& eisenstein_points() {
    static const Torsion o{0, 0}, u{2, 1}, v{1, 2};
    static const std::vector<TPoint> pts{{o, o}, {o, u}, {o, v}, {u, o}, {u, u}, {u, v}, {v, o}, {v, u}, {v, v}};
    return pts;
}

const Torsion g0{0, 0}, gh{1, 1}, g1{1, 0}, gi{0, 1}; // 0, (1+i)/2, 1/2, i/2

const std::vector<TPoint>& gauss_fixed_points() {
    static const std::vector<TPoint> pts{{g0, g0}, {g0, gh}, {gh, g0}, {gh, gh}};
    return pts;
}
const std::vector<TPoint>& gauss_pairs() {
    static const std::vector<TPoint> pts{{g0, g1}, {g1, g0}, {g1, gh}, {gh, g1}, {g1, g1}, {g1, gi}};
    return pts;
}
const std::vector<TPoint>& gauss_pairs_primed() {
    static const std::vector<TPoint> pts{{g0, gi}, {gi, g0}, {gi, gh}, {gh, gi}, {gi, gi}, {gi, g1}};
    return pts;
}

int find_point(const std::vector<TPoint>& pts, const TPoint& p) {
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (pts[i] == p) return static_cast<int>(i);
    return -1;
}

} // namespace

KummerAction KummerAction::from_matrix(const QuadMat& M) {
    KummerAction K;
    K.ring = M[0][0].ring;
    K.M = M;
    if (!det(M).is_unit()) throw MathError("determinant is not a unit");
    auto fail = []() { return MathError("torsion points are not permuted"); };
    if (K.ring == QuadRing::Eisenstein) {
        for (const auto& p : eisenstein_points()) {
            int k = find_point(eisenstein_points(), act(M, p, 3));
            if (k < 0) throw fail();
            K.sigma.push_back(k);
        }
    } else {
        for (const auto& p : gauss_fixed_points()) {
            int k = find_point(gauss_fixed_points(), act(M, p, 2));
            if (k < 0) throw fail();
            K.sigma.push_back(k);
        }
        for (const auto& p : gauss_pairs()) {
            TPoint q = act(M, p, 2);
            int k = find_point(gauss_pairs(), q);
            if (k >= 0) {
                K.xi.push_back(k);
                K.eta.push_back(1);
            } else if ((k = find_point(gauss_pairs_primed(), q)) >= 0) {
                K.xi.push_back(k);
                K.eta.push_back(-1);
            } else {
                throw fail();
            }
        }
    }
    for (const auto* perm : {&K.sigma, &K.xi}) {
        std::vector<int> s = *perm;
        std::sort(s.begin(), s.end());
        for (std::size_t i = 0; i < s.size(); ++i)
            if (s[i] != static_cast<int>(i)) throw fail();
    }
    return K;
}

std::vector<int> cycle_type(const std::vector<int>& perm) {
    std::vector<int> out;
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t s = 0; s < perm.size(); ++s) {
        if (seen[s]) continue;
        int len = 0;
        for (std::size_t c = s; !seen[c]; c = static_cast<std::size_t>(perm[c])) {
            seen[c] = true;
            ++len;
        }
        out.push_back(len);
    }
    return out;
}

// ---- H^1 characteristic polynomials ----

namespace {

using CPoly = UniPoly<Cyc>;

CPoly xk(int k) { return CPoly::monomial(Cyc(1), static_cast<std::size_t>(k)); }

// (x^k - c1^k)(x^k - c2^k) for c1, c2 the roots of x^2 - e1 x + e2.
CPoly conjugate_pair_power(const Cyc& e1, const Cyc& e2, int k) {
    Cyc s0(2), s1 = e1;
    for (int i = 1; i < k; ++i) {
        Cyc s2 = e1 * s1 - e2 * s0;
        s0 = s1;
        s1 = s2;
    }
    return xk(2 * k) - xk(k).scaled(s1) + CPoly(e2.pow(k));
}

} // namespace

UniPoly<Cyc> kummer_h1_charpoly(const KummerAction& K) {
    Cyc u = Cyc::from_quad(det(K.M)), t = Cyc::from_quad(trace(K.M));
    if (!det(K.M).is_unit()) throw MathError("determinant is not a unit");
    if (K.ring == QuadRing::Eisenstein) {
        // eigenvalues lambda alpha / u^2, lambda beta / u^2 over the spectrum of sigma minus one 1
        Cyc e1 = t / u.pow(2), e2 = Cyc(1) / u.pow(3);
        CPoly Q(1);
        for (int k : cycle_type(K.sigma)) Q *= conjugate_pair_power(e1, e2, k);
        auto [q, r] = Q.divmod(xk(2) - xk(1).scaled(e1) + CPoly(e2));
        if (!r.is_zero()) throw MathError("missing trivial eigenvalue");
        return q;
    }
    // lambda / (alpha beta) over the spectrum of rho, and mu / (alpha^3 beta), mu / (alpha beta^3),
    // mu / (alpha^2 beta^2) over the spectrum of sigma'
    Cyc c = Cyc(1) / u;
    CPoly Q(1);
    std::vector<bool> seen(K.xi.size(), false);
    for (std::size_t s = 0; s < K.xi.size(); ++s) {
        if (seen[s]) continue;
        int len = 0, sign = 1;
        for (std::size_t i = s; !seen[i]; i = static_cast<std::size_t>(K.xi[i])) {
            seen[i] = true;
            sign *= K.eta[i];
            ++len;
        }
        Q *= xk(len) - CPoly(Cyc(sign) * c.pow(len));
    }
    Cyc e1 = (t * t - Cyc(2) * u) / u.pow(3), e2 = Cyc(1) / u.pow(4), c3 = Cyc(1) / u.pow(2);
    for (int k : cycle_type(K.sigma)) Q *= conjugate_pair_power(e1, e2, k) * (xk(k) - CPoly(c3.pow(k)));
    return Q;
}

std::optional<QPoly> rational_poly(const UniPoly<Cyc>& p) {
    std::vector<Rational> c;
    for (const auto& a : p.coeffs()) {
        if (!a.is_rational()) return std::nullopt;
        c.push_back(a.rational_value());
    }
    return QPoly(c);
}

bool is_infinitesimally_rigid(const KummerAction& K) { return !kummer_h1_charpoly(K).eval(Cyc(1)).is_zero(); }

bool in_congruence_subgroup_H(const QuadMat& M) {
    if (M[0][0].ring != QuadRing::Eisenstein) return false;
    if (det(M) != QuadInt(QuadRing::Eisenstein, 1)) return false;
    // a + b j = a + b mod (1 - j), and Z[j]/(1 - j) = F_3
    auto red = [](const QuadInt& z) { return modk(z.a + z.b, 3); };
    return red(M[0][0]) == 1 && red(M[0][1]) == 0 && red(M[1][0]) == 0 && red(M[1][1]) == 1;
}

// ---- fixed points ----

Integer torus_fixed_points(const QuadMat& P) {
    QuadInt one(P[0][0].ring, 1);
    QuadInt v = one - trace(P) + det(P);
    if (v.is_zero()) throw MathError("1 is an eigenvalue");
    return v.norm();
}

namespace {
QuadMat scaled(const QuadMat& M, const QuadInt& s) {
    QuadMat r = M;
    for (auto& row : r)
        for (auto& e : row) e = s * e;
    return r;
}

void require_H_nontorsion(const QuadMat& M) {
    if (!in_congruence_subgroup_H(M)) throw MathError("matrix is not in the congruence subgroup H");
    QuadMat M3 = M * M * M;
    if (M3 == quad_identity(QuadRing::Eisenstein)) throw MathError("M^3 = Id");
}
} // namespace

LefschetzCounts lefschetz_counts(const QuadMat& M) {
    require_H_nontorsion(M);
    QuadInt j = QuadInt::unit_w(QuadRing::Eisenstein);
    LefschetzCounts c;
    c.fix_torus = torus_fixed_points(M);
    c.s1 = c.fix_torus - 9;
    c.s2 = torus_fixed_points(scaled(M, j * j)) - 9;
    c.s3 = torus_fixed_points(scaled(M, j)) - 9;
    c.fix_kummer = trace(M).norm() + 11;
    return c;
}

AtiyahBottTrace atiyah_bott_trace(const QuadMat& M) {
    require_H_nontorsion(M);
    AtiyahBottTrace r;
    Cyc t = Cyc::from_quad(trace(M));
    r.closed_form = Cyc(8) * t;
    if (t == Cyc(2) || t == Cyc(-1)) return r;
    // two fixed points on each of the nine curves E_i, with eigenvalues (alpha^3, alpha^-2)
    r.theta2 = Cyc(-9) * t - Cyc(6) / (t - Cyc(2)) - Cyc(3) / (Cyc(1) + t);
    // fixed points off the E_i: classes of f_M(p) = p, j^2 p, j p, with differential M, j^2 M, j M
    QuadInt j = QuadInt::unit_w(QuadRing::Eisenstein);
    r.theta1 = Cyc(0);
    for (const QuadInt& s : {QuadInt(QuadRing::Eisenstein, 1), j * j, j}) {
        QuadMat P = scaled(M, s);
        Integer n = torus_fixed_points(P) - 9;
        if (n % 3 != 0) throw MathError("fixed points do not form free orbits");
        QuadMat Pi = inverse(P);
        Cyc num = Cyc::from_quad(trace(Pi));
        Cyc den = Cyc(1) - Cyc::from_quad(trace(P)) + Cyc::from_quad(det(P));
        r.theta1 = r.theta1 + Cyc(Rational(n / 3)) * num / den;
    }
    r.pointwise = -(r.theta1 + r.theta2);
    return r;
}

// ---- Cremona degree ----

long cremona_degree(const QuadMat& M) {
    if (M[0][0].ring != QuadRing::Eisenstein) throw MathError("degree formula is for the Eisenstein lattice");
    if (!det(M).is_unit()) throw MathError("matrix is not invertible");
    Cyc a = Cyc::from_quad(M[0][0]), b = Cyc::from_quad(M[0][1]), c = Cyc::from_quad(M[1][0]),
        d = Cyc::from_quad(M[1][1]);
    Cyc i = Cyc::zeta(4), j = Cyc::zeta(3), j2 = j * j, s3 = Cyc::sqrt3(), half(Rational(1, 2));
    Cyc v = (a + d).abs2() + (c - j * b).abs2() + (Cyc(1) + s3 * half) * (i * a - j2 * b - j * c - i * d).abs2() +
            (Cyc(1) - s3 * half) * (i * a + j2 * b + j * c - i * d).abs2() - Cyc(3);
    if (!v.is_rational() || v.rational_value().get_den() != 1) throw MathError("degree formula is not an integer");
    Integer n = v.rational_value().get_num();
    if (n < 1) throw MathError("degree formula is not positive");
    return n.get_si();
}

// ---- homogeneous polynomials ----

HomPoly HomPoly::var(int i) {
    HomPoly p;
    Exp e{0, 0, 0};
    e.at(static_cast<std::size_t>(i)) = 1;
    p.t_[e] = Cyc(1);
    return p;
}

HomPoly HomPoly::constant(const Cyc& c) {
    HomPoly p;
    p.add({0, 0, 0}, c);
    return p;
}

int HomPoly::degree() const {
    if (t_.empty()) return -1;
    const auto& e = t_.begin()->first;
    return e[0] + e[1] + e[2];
}

void HomPoly::add(const Exp& e, const Cyc& c) {
    if (!t_.empty() && e[0] + e[1] + e[2] != degree()) throw MathError("inhomogeneous term");
    auto it = t_.find(e);
    if (it == t_.end()) {
        if (!c.is_zero()) t_.emplace(e, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) t_.erase(it);
}

HomPoly HomPoly::operator+(const HomPoly& o) const {
    HomPoly r = *this;
    for (const auto& [e, c] : o.t_) r.add(e, c);
    return r;
}

HomPoly HomPoly::operator-(const HomPoly& o) const { return *this + o.scaled(Cyc(-1)); }

HomPoly HomPoly::operator*(const HomPoly& o) const {
    HomPoly r;
    for (const auto& [e, c] : t_)
        for (const auto& [f, d] : o.t_) r.add({e[0] + f[0], e[1] + f[1], e[2] + f[2]}, c * d);
    return r;
}

HomPoly HomPoly::scaled(const Cyc& c) const {
    HomPoly r;
    if (c.is_zero()) return r;
    for (const auto& [e, v] : t_) r.t_.emplace(e, v * c);
    return r;
}

HomPoly HomPoly::pow(unsigned e) const {
    HomPoly r = constant(Cyc(1)), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

HomPoly HomPoly::substitute(const std::array<HomPoly, 3>& g) const {
    HomPoly r;
    std::array<std::vector<HomPoly>, 3> powers;
    for (int v = 0; v < 3; ++v) powers[v].push_back(constant(Cyc(1)));
    for (const auto& [e, c] : t_) {
        HomPoly m = constant(c);
        for (int v = 0; v < 3; ++v) {
            while (static_cast<int>(powers[v].size()) <= e[v]) powers[v].push_back(powers[v].back() * g[v]);
            m = m * powers[v][static_cast<std::size_t>(e[v])];
        }
        r = r + m;
    }
    return r;
}

bool operator==(const HomPoly& a, const HomPoly& b) { return (a - b).is_zero(); }

std::string HomPoly::to_string() const {
    if (t_.empty()) return "0";
    std::string out;
    static const char* names[3] = {"x", "y", "z"};
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        if (!out.empty()) out += " + ";
        std::string cs = it->second.to_string();
        bool unit = cs == "1";
        if (!unit) out += "(" + cs + ")";
        bool first = unit;
        for (int v = 0; v < 3; ++v) {
            if (it->first[v] == 0) continue;
            if (!first) out += "*";
            first = false;
            out += names[v];
            if (it->first[v] > 1) out += "^" + std::to_string(it->first[v]);
        }
        if (unit && first) out += "1";
    }
    return out;
}

namespace {

using CPoly1 = UniPoly<Cyc>;
// Polynomial in x with coefficients in K[y], coefficients low to high.
using Biv = std::vector<CPoly1>;

void trim(Biv& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

Biv dehomogenize(const HomPoly& p) {
    Biv r;
    for (const auto& [e, c] : p.terms()) {
        if (static_cast<int>(r.size()) <= e[0]) r.resize(static_cast<std::size_t>(e[0]) + 1);
        r[static_cast<std::size_t>(e[0])] += CPoly1::monomial(c, static_cast<std::size_t>(e[1]));
    }
    trim(r);
    return r;
}

CPoly1 content(const Biv& a) {
    CPoly1 g;
    for (const auto& c : a) g = gcd(g, c);
    return g;
}

Biv primitive(const Biv& a) {
    CPoly1 g = content(a);
    Biv r;
    for (const auto& c : a) r.push_back(c.exact_div(g));
    return r;
}

// Pseudo-remainder of a by b in K[y][x].
Biv prem(Biv a, const Biv& b) {
    while (a.size() >= b.size() && !a.empty()) {
        std::size_t shift = a.size() - b.size();
        CPoly1 la = a.back(), lb = b.back();
        for (auto& c : a) c = c * lb;
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= la * b[i];
        trim(a);
    }
    return a;
}

// Bivariate gcd of polynomials with no factor z, rehomogenized to total degree.
HomPoly gcd_zfree(const HomPoly& a, const HomPoly& b) {
    Biv A = dehomogenize(a), B = dehomogenize(b);
    CPoly1 c = gcd(content(A), content(B));
    A = primitive(A);
    B = primitive(B);
    if (A.size() < B.size()) std::swap(A, B);
    while (B.size() > 1) {
        Biv R = prem(A, B);
        A = B;
        if (R.empty()) {
            B.clear();
            break;
        }
        B = primitive(R);
    }
    Biv G = B.empty() ? A : Biv{CPoly1(Cyc(1))};
    if (B.size() == 1) G = Biv{CPoly1(Cyc(1))};
    for (auto& e : G) e = e * c;
    int deg = 0;
    for (std::size_t i = 0; i < G.size(); ++i)
        if (!G[i].is_zero()) deg = std::max(deg, static_cast<int>(i) + G[i].degree());
    HomPoly out;
    for (std::size_t i = 0; i < G.size(); ++i)
        for (int k = 0; k <= G[i].degree(); ++k)
            if (!G[i].coeff(static_cast<std::size_t>(k)).is_zero())
                out.add({static_cast<int>(i), k, deg - static_cast<int>(i) - k}, G[i].coeff(static_cast<std::size_t>(k)));
    return out;
}

int z_order(const HomPoly& p) {
    int m = 1 << 30;
    for (const auto& [e, c] : p.terms()) m = std::min(m, e[2]);
    return m;
}

HomPoly z_power(int k) { return HomPoly::var(2).pow(static_cast<unsigned>(k)); }

} // namespace

HomPoly hom_div(const HomPoly& a, const HomPoly& b) {
    if (b.is_zero()) throw MathError("division by the zero polynomial");
    HomPoly r = a, q;
    const auto& [lb, cb] = *b.terms().rbegin();
    while (!r.is_zero()) {
        const auto [la, ca] = *r.terms().rbegin();
        HomPoly::Exp e{la[0] - lb[0], la[1] - lb[1], la[2] - lb[2]};
        if (e[0] < 0 || e[1] < 0 || e[2] < 0) throw MathError("inexact polynomial division");
        HomPoly m;
        m.add(e, ca / cb);
        q = q + m;
        r = r - m * b;
    }
    return q;
}

HomPoly hom_gcd(const HomPoly& a, const HomPoly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    int za = z_order(a), zb = z_order(b);
    HomPoly g = gcd_zfree(hom_div(a, z_power(za)), hom_div(b, z_power(zb)));
    return g * z_power(std::min(za, zb));
}

bool CremonaMap::is_identity() const {
    std::optional<Cyc> c;
    for (int v = 0; v < 3; ++v) {
        const auto& t = f[v].terms();
        HomPoly::Exp e{0, 0, 0};
        e[v] = 1;
        if (t.size() != 1 || t.begin()->first != e) return false;
        if (c && *c != t.begin()->second) return false;
        c = t.begin()->second;
    }
    return true;
}

CremonaMap reduce_cremona(std::array<HomPoly, 3> f) {
    HomPoly g = hom_gcd(f[0], hom_gcd(f[1], f[2]));
    if (g.is_zero()) throw MathError("composition is identically zero");
    for (auto& p : f) p = hom_div(p, g);
    // normalize the leading coefficient of the first nonzero component
    for (const auto& p : f)
        if (!p.is_zero()) {
            Cyc s = Cyc(1) / p.terms().rbegin()->second;
            for (auto& q : f) q = q.scaled(s);
            break;
        }
    return {f};
}

CremonaMap compose_cremona(const CremonaMap& f, const CremonaMap& g) {
    std::array<HomPoly, 3> r;
    for (int v = 0; v < 3; ++v) r[v] = f.f[v].substitute(g.f);
    return reduce_cremona(r);
}

// ---- generators ----

QuadMat kummer_generator(int k) {
    auto E = [](long a, long b = 0) { return QuadInt(QuadRing::Eisenstein, a, b); };
    switch (k) {
    case 1: return make_quad_mat(E(0), E(1), E(-1), E(1));
    case 2: return make_quad_mat(E(0), E(1), E(0, -1), E(0));
    case 3: return make_quad_mat(E(0), E(1), E(1), E(0));
    default: throw MathError("generator index must be 1, 2 or 3");
    }
}

CremonaMap kummer_generator_map(int k) {
    HomPoly x = HomPoly::var(0), y = HomPoly::var(1), z = HomPoly::var(2);
    Cyc j = Cyc::zeta(3), j2 = j * j;
    auto lin = [&](const Cyc& a, const Cyc& b, const Cyc& c) { return x.scaled(a) + y.scaled(b) + z.scaled(c); };
    Cyc one(1);
    switch (k) {
    case 1: return {{lin(one, one, one), lin(j, one, j2), lin(j, j2, one)}};
    case 2: return {{lin(one, one, one), lin(one, j2, j), lin(one, j, j2)}};
    case 3: {
        HomPoly a = x * x + y * y + z * z - (x * y + x * z + y * z).scaled(j2);
        HomPoly b = x * x + (y * y).scaled(j) + (z * z).scaled(j2) - (x * y).scaled(j) - x * z - (y * z).scaled(j2);
        HomPoly c = x * x + (y * y).scaled(j2) + (z * z).scaled(j) - x * y - (x * z).scaled(j) - (y * z).scaled(j2);
        return {{a, b, c}};
    }
    default: throw MathError("generator index must be 1, 2 or 3");
    }
}

CremonaMap word_map(const std::vector<int>& word) {
    CremonaMap r{{HomPoly::var(0), HomPoly::var(1), HomPoly::var(2)}};
    for (int k : word) r = compose_cremona(r, kummer_generator_map(k));
    return r;
}

QuadMat word_matrix(const std::vector<int>& word) {
    QuadMat r = quad_identity(QuadRing::Eisenstein);
    for (int k : word) r = r * kummer_generator(k);
    return r;
}

// ---- semigroup decomposition ----

namespace {

using Word = std::vector<int>;

Word concat(std::initializer_list<Word> parts) {
    Word w;
    for (const auto& p : parts) w.insert(w.end(), p.begin(), p.end());
    return w;
}

Word repeat(const Word& w, long n) {
    Word r;
    for (long i = 0; i < n; ++i) r.insert(r.end(), w.begin(), w.end());
    return r;
}

const Word kD2{2, 3};          // diag(1, -j)
const Word kD1{3, 2, 3, 3};    // diag(-j, 1)

// (-j)^k = u
int unit_exponent(const QuadInt& u) {
    QuadInt mj = -QuadInt::unit_w(QuadRing::Eisenstein), p(QuadRing::Eisenstein, 1);
    for (int k = 0; k < 6; ++k, p = p * mj)
        if (p == u) return k;
    throw MathError("not a unit");
}

Word diag_word(const QuadInt& u1, const QuadInt& u2) {
    return concat({repeat(kD1, unit_exponent(u1)), repeat(kD2, unit_exponent(u2))});
}

QuadInt E(long a, long b = 0) { return QuadInt(QuadRing::Eisenstein, a, b); }

// -Id, diag(-1, 1), diag(j^2, j), diag(j, j^2)
Word minus_id() { return diag_word(E(-1), E(-1)); }
Word flip() { return diag_word(E(-1), E(1)); }
Word dj2j() { return diag_word(E(-1, -1), E(0, 1)); }
Word djj2() { return diag_word(E(0, 1), E(-1, -1)); }

// upper (row 1 += q row 2) or lower (row 2 += q row 1) transvection
Word transvection_unit(bool upper, int sign, bool jpart) {
    Word base = upper ? concat({minus_id(), {3, 1}, repeat(kD2, 3)}) : concat({minus_id(), {1}, repeat(kD2, 3), {3}});
    if (jpart) base = upper ? concat({dj2j(), base, djj2()}) : concat({djj2(), base, dj2j()});
    if (sign < 0) base = concat({flip(), base, flip()});
    return base;
}

Word transvection(bool upper, const QuadInt& q) {
    long a = q.a.get_si(), b = q.b.get_si();
    return concat({repeat(transvection_unit(upper, a < 0 ? -1 : 1, false), std::labs(a)),
                   repeat(transvection_unit(upper, b < 0 ? -1 : 1, true), std::labs(b))});
}

// Nearest element of Z[j] to n / d.
QuadInt round_quotient(const QuadInt& n, const QuadInt& d) {
    QuadInt p = n * d.conj();
    Integer N = d.norm();
    auto rnd = [&](const Integer& v) {
        mpq_class q(v, N);
        mpz_class f = q.get_num() / q.get_den();
        if (mpq_class(f) > q) f -= 1; // floor
        if (q - mpq_class(f) >= mpq_class(1, 2)) f += 1;
        return f;
    };
    return QuadInt(QuadRing::Eisenstein, rnd(p.a), rnd(p.b));
}

} // namespace

std::vector<int> semigroup_decompose(const QuadMat& M) {
    if (M[0][0].ring != QuadRing::Eisenstein) throw MathError("decomposition is over Z[j]");
    if (!det(M).is_unit()) throw MathError("matrix is not invertible");
    for (int k = 1; k <= 3; ++k)
        if (M == kummer_generator(k)) return {k};
    // row operations L_k ... L_1 M = D, hence M = L_1^-1 ... L_k^-1 D
    QuadMat A = M;
    std::vector<Word> inv_ops;
    while (!A[1][0].is_zero() && !A[0][0].is_zero()) {
        if (A[0][0].norm() >= A[1][0].norm()) {
            QuadInt q = round_quotient(A[0][0], A[1][0]);
            for (int c = 0; c < 2; ++c) A[0][c] = A[0][c] - q * A[1][c];
            inv_ops.push_back(transvection(true, q));
        } else {
            QuadInt q = round_quotient(A[1][0], A[0][0]);
            for (int c = 0; c < 2; ++c) A[1][c] = A[1][c] - q * A[0][c];
            inv_ops.push_back(transvection(false, q));
        }
    }
    if (A[0][0].is_zero()) {
        std::swap(A[0], A[1]);
        inv_ops.push_back({3});
    }
    // A = (a, b; 0, d) with a, d units
    QuadInt di = *E(1).divexact(A[1][1]);
    QuadInt q = A[0][1] * di;
    A[0][1] = A[0][1] - q * A[1][1];
    inv_ops.push_back(transvection(true, q));
    Word w;
    for (const auto& op : inv_ops) w.insert(w.end(), op.begin(), op.end());
    Word d = diag_word(A[0][0], A[1][1]);
    w.insert(w.end(), d.begin(), d.end());
    if (!(word_matrix(w) == M)) throw MathError("semigroup decomposition failed");
    return w;
}

} // namespace sd
