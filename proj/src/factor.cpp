#include "surfdef/factor.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>

namespace sd {

namespace {

using ZPoly = std::vector<Integer>;

// ---- dense polynomials over Z/p, p a small odd prime ----

using Fp = std::vector<long long>;

struct ModP {
    long long p;

    long long norm(long long a) const {
        a %= p;
        return a < 0 ? a + p : a;
    }
    long long inv(long long a) const {
        long long g = p, x = 0, x1 = 1, r = norm(a);
        while (r) {
            long long q = g / r;
            std::tie(g, r) = std::make_pair(r, g - q * r);
            std::tie(x, x1) = std::make_pair(x1, x - q * x1);
        }
        return norm(x);
    }
    static void trim(Fp& a) {
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    Fp sub(Fp a, const Fp& b) const {
        if (b.size() > a.size()) a.resize(b.size(), 0);
        for (std::size_t i = 0; i < b.size(); ++i) a[i] = norm(a[i] - b[i]);
        trim(a);
        return a;
    }
    Fp add(Fp a, const Fp& b) const {
        if (b.size() > a.size()) a.resize(b.size(), 0);
        for (std::size_t i = 0; i < b.size(); ++i) a[i] = norm(a[i] + b[i]);
        trim(a);
        return a;
    }
    Fp mul(const Fp& a, const Fp& b) const {
        if (a.empty() || b.empty()) return {};
        Fp r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
        trim(r);
        return r;
    }
    std::pair<Fp, Fp> divmod(Fp a, const Fp& b) const {
        if (a.size() < b.size()) return {{}, a};
        Fp q(a.size() - b.size() + 1, 0);
        long long li = inv(b.back());
        for (std::size_t k = q.size(); k-- > 0;) {
            long long t = a[k + b.size() - 1] * li % p;
            q[k] = t;
            if (!t) continue;
            for (std::size_t j = 0; j < b.size(); ++j) a[k + j] = norm(a[k + j] - t * b[j]);
        }
        a.resize(b.size() - 1);
        trim(a);
        trim(q);
        return {q, a};
    }
    Fp rem(const Fp& a, const Fp& b) const { return divmod(a, b).second; }
    Fp monic(Fp a) const {
        if (a.empty()) return a;
        long long li = inv(a.back());
        for (auto& c : a) c = c * li % p;
        return a;
    }
    Fp gcd(Fp a, Fp b) const {
        while (!b.empty()) {
            Fp r = rem(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        return monic(a);
    }
    // (g, s, t) with s a + t b = g monic
    std::tuple<Fp, Fp, Fp> xgcd(Fp a, Fp b) const {
        Fp s0{1}, s1, t0, t1{1};
        while (!b.empty()) {
            auto [q, r] = divmod(a, b);
            a = std::move(b);
            b = std::move(r);
            Fp s2 = sub(s0, mul(q, s1)), t2 = sub(t0, mul(q, t1));
            s0 = std::move(s1);
            s1 = std::move(s2);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        long long li = inv(a.back());
        auto sc = [&](Fp v) {
            for (auto& c : v) c = c * li % p;
            return v;
        };
        return {sc(a), sc(s0), sc(t0)};
    }
    Fp powmod(Fp base, const Integer& e, const Fp& m) const {
        Fp r{1};
        base = rem(base, m);
        std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
        for (std::size_t i = bits; i-- > 0;) {
            r = rem(mul(r, r), m);
            if (mpz_tstbit(e.get_mpz_t(), i)) r = rem(mul(r, base), m);
        }
        return r;
    }
    Fp derivative(const Fp& a) const {
        if (a.size() <= 1) return {};
        Fp r(a.size() - 1);
        for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * static_cast<long long>(i % p) % p;
        trim(r);
        return r;
    }
    Fp reduce(const ZPoly& f) const {
        Fp r(f.size());
        mpz_class pz(static_cast<long>(p));
        for (std::size_t i = 0; i < f.size(); ++i) {
            mpz_class m;
            mpz_fdiv_r(m.get_mpz_t(), f[i].get_mpz_t(), pz.get_mpz_t());
            r[i] = m.get_si();
        }
        trim(r);
        return r;
    }

    void equal_degree(const Fp& g, int d, std::mt19937_64& rng, std::vector<Fp>& out) const {
        int n = static_cast<int>(g.size()) - 1;
        if (n == d) {
            out.push_back(g);
            return;
        }
        Integer e;
        mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(d));
        e = (e - 1) / 2;
        std::uniform_int_distribution<long long> dist(0, p - 1);
        for (;;) {
            Fp a(n);
            for (auto& c : a) c = dist(rng);
            trim(a);
            if (a.size() < 2) continue;
            Fp b = sub(powmod(a, e, g), Fp{1});
            Fp c = gcd(g, b);
            int dc = static_cast<int>(c.size()) - 1;
            if (dc > 0 && dc < n) {
                equal_degree(c, d, rng, out);
                equal_degree(divmod(g, c).first, d, rng, out);
                return;
            }
        }
    }

    // Monic irreducible factors of a monic square-free polynomial.
    std::vector<Fp> factor(Fp f, std::mt19937_64& rng) const {
        std::vector<Fp> out;
        Fp x{0, 1};
        Fp h = x;
        Integer pz(static_cast<long>(p));
        for (int d = 1; 2 * d <= static_cast<int>(f.size()) - 1; ++d) {
            h = powmod(h, pz, f);
            Fp g = gcd(f, sub(h, x));
            if (g.size() > 1) {
                equal_degree(g, d, rng, out);
                f = divmod(f, g).first;
                h = rem(h, f);
            }
        }
        if (f.size() > 1) out.push_back(f);
        return out;
    }
};

ZPoly to_zpoly(const QPoly& p) {
    Integer den = 1;
    for (const auto& c : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    ZPoly z;
    for (const auto& c : p.coeffs()) z.push_back(Integer(c * den));
    Integer g = 0;
    for (const auto& c : z) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g != 0)
        for (auto& c : z) c /= g;
    if (!z.empty() && z.back() < 0)
        for (auto& c : z) c = -c;
    return z;
}

QPoly to_qpoly(const ZPoly& z) {
    std::vector<Rational> v(z.begin(), z.end());
    return QPoly(std::move(v));
}

// symmetric residue of a mod m
Integer smod(const Integer& a, const Integer& m) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    if (2 * r > m) r -= m;
    return r;
}

ZPoly zmod(const ZPoly& a, const Integer& m) {
    ZPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) mpz_fdiv_r(r[i].get_mpz_t(), a[i].get_mpz_t(), m.get_mpz_t());
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

ZPoly zsub(ZPoly a, const ZPoly& b) {
    if (b.size() > a.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

ZPoly from_fp(const Fp& f) {
    ZPoly r;
    r.reserve(f.size());
    for (long long c : f) r.emplace_back(static_cast<long>(c));
    return r;
}

// Lift F = G*H (mod p) to mod p^k with G monic and lc(H) = lc(F).
void hensel_lift(const ModP& P, const ZPoly& F, ZPoly& G, ZPoly& H, int k) {
    auto [g, s, t] = P.xgcd(P.reduce(G), P.reduce(H));
    (void)g;
    Integer m = static_cast<long>(P.p);
    Integer pz = m;
    for (int step = 1; step < k; ++step) {
        ZPoly diff = zsub(F, zmul(G, H));
        for (auto& c : diff) {
            if (!mpz_divisible_p(c.get_mpz_t(), m.get_mpz_t())) throw MathError("hensel: congruence lost");
            c /= m;
        }
        Fp e = P.reduce(diff);
        Fp gp = P.reduce(G), hp = P.reduce(H);
        Fp dG = P.rem(P.mul(t, e), gp);
        auto [dH, r] = P.divmod(P.sub(e, P.mul(dG, hp)), gp);
        if (!r.empty()) throw MathError("hensel: inexact correction");
        ZPoly zdG = from_fp(dG), zdH = from_fp(dH);
        if (zdG.size() > G.size()) G.resize(zdG.size(), 0);
        for (std::size_t i = 0; i < zdG.size(); ++i) G[i] += m * zdG[i];
        if (zdH.size() > H.size()) H.resize(zdH.size(), 0);
        for (std::size_t i = 0; i < zdH.size(); ++i) H[i] += m * zdH[i];
        m *= pz;
        G = zmod(G, m);
        H = zmod(H, m);
    }
}

bool zdivides(const ZPoly& g, const ZPoly& f, ZPoly& quot) {
    QPoly qg = to_qpoly(g), qf = to_qpoly(f);
    auto [q, r] = qf.divmod(qg);
    if (!r.is_zero()) return false;
    for (const auto& c : q.coeffs())
        if (c.get_den() != 1) return false;
    quot.clear();
    for (const auto& c : q.coeffs()) quot.push_back(c.get_num());
    return true;
}

ZPoly primitive(ZPoly z) {
    Integer g = 0;
    for (const auto& c : z) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g != 0 && g != 1)
        for (auto& c : z) c /= g;
    if (!z.empty() && z.back() < 0)
        for (auto& c : z) c = -c;
    return z;
}

bool next_combination(std::vector<int>& idx, int n) {
    int k = static_cast<int>(idx.size());
    for (int i = k - 1; i >= 0; --i) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

// f primitive, square-free, positive leading coefficient
std::vector<ZPoly> zassenhaus(const ZPoly& f) {
    int n = static_cast<int>(f.size()) - 1;
    if (n <= 1) return {f};
    std::mt19937_64 rng(0x5eed);
    static const long long primes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59,
                                       61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131,
                                       137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199};
    long long best_p = 0;
    std::vector<Fp> best;
    int tried = 0;
    for (long long p : primes) {
        ModP P{p};
        if (mpz_divisible_ui_p(f.back().get_mpz_t(), static_cast<unsigned long>(p))) continue;
        Fp fp = P.reduce(f);
        if (P.gcd(fp, P.derivative(fp)).size() != 1) continue;
        auto fac = P.factor(P.monic(fp), rng);
        if (best_p == 0 || fac.size() < best.size()) {
            best_p = p;
            best = fac;
        }
        if (best.size() == 1) return {f};
        if (++tried == 6) break;
    }
    if (best_p == 0) throw MathError("zassenhaus: no good prime");
    ModP P{best_p};

    Integer maxc = 0;
    for (const auto& c : f) maxc = std::max(maxc, Integer(abs(c)));
    Integer bound = Integer(abs(f.back())) * maxc * (n + 1);
    bound <<= n + 1;
    Integer pk = static_cast<long>(best_p);
    int k = 1;
    while (pk <= bound) {
        pk *= static_cast<long>(best_p);
        ++k;
    }

    // lift all modular factors
    std::vector<ZPoly> lifted;
    ZPoly F = f;
    for (std::size_t i = 0; i + 1 < best.size(); ++i) {
        ZPoly G = from_fp(best[i]);
        Fp rest = P.reduce(ZPoly{f.back()});
        for (std::size_t j = i + 1; j < best.size(); ++j) rest = P.mul(rest, best[j]);
        ZPoly H = from_fp(rest);
        hensel_lift(P, F, G, H, k);
        lifted.push_back(G);
        F = H;
    }
    {
        // remaining factor: make monic mod p^k
        Integer lc = F.back(), inv;
        mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), pk.get_mpz_t());
        for (auto& c : F) c = c * inv;
        lifted.push_back(zmod(F, pk));
    }

    std::vector<ZPoly> result;
    ZPoly cur = f;
    std::vector<int> alive(lifted.size());
    for (std::size_t i = 0; i < alive.size(); ++i) alive[i] = static_cast<int>(i);
    for (int s = 1; 2 * s <= static_cast<int>(alive.size());) {
        bool found = false;
        std::vector<int> idx(s);
        for (int i = 0; i < s; ++i) idx[i] = i;
        do {
            ZPoly g{cur.back()};
            for (int i : idx) g = zmod(zmul(g, lifted[alive[i]]), pk);
            for (auto& c : g) c = smod(c, pk);
            g = primitive(g);
            ZPoly q;
            if (zdivides(g, cur, q)) {
                result.push_back(g);
                cur = primitive(q);
                std::vector<int> keep;
                for (int i = 0; i < static_cast<int>(alive.size()); ++i)
                    if (std::find(idx.begin(), idx.end(), i) == idx.end()) keep.push_back(alive[i]);
                alive = keep;
                found = true;
                break;
            }
        } while (next_combination(idx, static_cast<int>(alive.size())));
        if (!found) ++s;
    }
    if (cur.size() > 1) result.push_back(cur);
    return result;
}

bool poly_less(const QPoly& a, const QPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i)
        if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
    return false;
}

} // namespace

QPoly primitive_part(const QPoly& p) { return to_qpoly(to_zpoly(p)); }

std::vector<std::pair<QPoly, int>> squarefree_decomposition(const QPoly& p) {
    std::vector<std::pair<QPoly, int>> out;
    if (p.degree() <= 0) return out;
    QPoly a = p.monic();
    QPoly b = a.derivative();
    QPoly c = gcd(a, b);
    QPoly w = a / c;
    QPoly y = b / c;
    QPoly z = y - w.derivative();
    for (int i = 1; w.degree() > 0; ++i) {
        QPoly g = gcd(w, z);
        if (g.degree() > 0) out.emplace_back(g, i);
        w = w / g;
        y = z / g;
        z = y - w.derivative();
    }
    return out;
}

Factorization factor_over_Q(const QPoly& p) {
    if (p.is_zero()) throw MathError("factor_over_Q: zero polynomial");
    Factorization res;
    for (const auto& [g, m] : squarefree_decomposition(p)) {
        for (const auto& z : zassenhaus(to_zpoly(g))) res.factors.emplace_back(to_qpoly(z), m);
    }
    std::sort(res.factors.begin(), res.factors.end(),
              [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
    Rational lc = 1;
    for (const auto& [f, m] : res.factors)
        for (int i = 0; i < m; ++i) lc *= f.lead();
    res.unit = p.lead() / lc;
    return res;
}

QPoly Factorization::expand() const {
    QPoly r(unit);
    for (const auto& [f, m] : factors) r *= f.pow(static_cast<unsigned>(m));
    return r;
}

int Factorization::multiplicity(const QPoly& f) const {
    QPoly pf = primitive_part(f);
    for (const auto& [g, m] : factors)
        if (g == pf) return m;
    return 0;
}

std::string Factorization::to_string(const std::string& var) const {
    std::string out;
    if (unit != 1 || factors.empty()) out = sd::to_string(unit);
    for (const auto& [f, m] : factors) {
        if (!out.empty()) out += "*";
        out += "(" + f.to_string(var) + ")";
        if (m > 1) out += "^" + std::to_string(m);
    }
    return out;
}

QPoly cyclotomic_polynomial(unsigned n) {
    static std::mutex mu;
    static std::map<unsigned, QPoly> memo;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(n);
        if (it != memo.end()) return it->second;
    }
    QPoly r = QPoly::monomial(Rational(1), n) - QPoly(1);
    for (unsigned d = 1; d < n; ++d)
        if (n % d == 0) r = r.exact_div(cyclotomic_polynomial(d));
    std::lock_guard<std::mutex> lock(mu);
    memo.emplace(n, r);
    return r;
}

std::optional<unsigned> cyclotomic_order(const QPoly& p) {
    int d = p.degree();
    if (d < 1) return std::nullopt;
    QPoly m = p.monic();
    QPoly x = QPoly::x();
    QPoly xk = QPoly(1);
    for (unsigned k = 1; k <= static_cast<unsigned>(2 * d * d); ++k) {
        xk = (xk * x) % m;
        if ((xk - QPoly(1)).is_zero()) return k;
    }
    return std::nullopt;
}

int root_multiplicity(const QPoly& p, const Rational& r) {
    if (p.is_zero()) throw MathError("root_multiplicity of zero polynomial");
    QPoly lin(std::vector<Rational>{-r, Rational(1)});
    QPoly cur = p;
    int m = 0;
    for (;;) {
        auto [q, rem] = cur.divmod(lin);
        if (!rem.is_zero()) return m;
        cur = q;
        ++m;
    }
}

} // namespace sd
