#include "surfdef/mpoly.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <unordered_map>

namespace sd {

// ---------------- registry ----------------

namespace {

struct Registry {
    std::mutex mu;
    std::vector<std::string> names;
    std::unordered_map<std::string, std::size_t> idx;

    Registry() {
        const char* fixed[] = {"x",   "y",   "z",   "u",   "v",   "w",   "t",   "s",    "u1",   "v1",  "r2",
                               "s2",  "r3",  "s3",  "r4",  "s4",  "r5",  "s5",  "c4",   "d4",   "c5",  "d5",
                               "lam1", "lam2", "lam3", "lam4", "lam5", "mu1", "mu2", "mu3", "mu4", "mu5", "alpha"};
        for (const char* n : fixed) add(n);
    }
    std::size_t add(const std::string& n) {
        auto it = idx.find(n);
        if (it != idx.end()) return it->second;
        names.push_back(n);
        idx.emplace(n, names.size() - 1);
        return names.size() - 1;
    }
};

Registry& registry() {
    static Registry r;
    return r;
}

} // namespace

std::size_t VarRegistry::index(std::string_view name) {
    auto& r = registry();
    std::lock_guard<std::mutex> lock(r.mu);
    return r.add(std::string(name));
}

std::string VarRegistry::name(std::size_t i) {
    auto& r = registry();
    std::lock_guard<std::mutex> lock(r.mu);
    if (i >= r.names.size()) throw MathError("unknown variable index");
    return r.names[i];
}

std::size_t VarRegistry::size() {
    auto& r = registry();
    std::lock_guard<std::mutex> lock(r.mu);
    return r.names.size();
}

// ---------------- monomials ----------------

Monomial Monomial::of(Var v, unsigned e) {
    Monomial m;
    if (e == 0) return m;
    m.e_.assign(v + 1, 0);
    m.e_[v] = e;
    return m;
}

void Monomial::trim() {
    while (!e_.empty() && e_.back() == 0) e_.pop_back();
}

unsigned Monomial::total_degree() const {
    unsigned s = 0;
    for (auto e : e_) s += e;
    return s;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    r.e_.assign(std::max(e_.size(), o.e_.size()), 0);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += e_[i];
    for (std::size_t i = 0; i < o.e_.size(); ++i) r.e_[i] += o.e_[i];
    return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
    Monomial r = *this;
    for (std::size_t i = 0; i < o.e_.size(); ++i) {
        if (i >= r.e_.size() || r.e_[i] < o.e_[i]) throw MathError("monomial not divisible");
        r.e_[i] -= o.e_[i];
    }
    r.trim();
    return r;
}

bool Monomial::divides(const Monomial& o) const {
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i] > o.exp(i)) return false;
    return true;
}

Monomial Monomial::with_exp(Var v, unsigned e) const {
    Monomial r = *this;
    if (v >= r.e_.size()) r.e_.resize(v + 1, 0);
    r.e_[v] = e;
    r.trim();
    return r;
}

int Monomial::cmp(const Monomial& a, const Monomial& b) {
    std::size_t n = std::max(a.e_.size(), b.e_.size());
    for (std::size_t i = 0; i < n; ++i) {
        unsigned x = a.exp(i), y = b.exp(i);
        if (x != y) return x > y ? 1 : -1;
    }
    return 0;
}

std::string Monomial::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < e_.size(); ++i) {
        if (!e_[i]) continue;
        if (!s.empty()) s += "*";
        s += VarRegistry::name(i) + "^" + std::to_string(e_[i]);
    }
    return s;
}

// ---------------- polynomials ----------------

MPoly::MPoly(const Rational& c) {
    if (!sd::is_zero(c)) t_.push_back({Monomial(), c});
}

MPoly MPoly::variable(Var v) { return term(Rational(1), Monomial::of(v)); }

MPoly MPoly::term(const Rational& c, const Monomial& m) {
    MPoly p;
    if (!sd::is_zero(c)) p.t_.push_back({m, c});
    return p;
}

MPoly MPoly::from_map(std::map<Monomial, Rational, MonoGreater>&& terms) {
    MPoly p;
    p.t_.reserve(terms.size());
    for (auto& [m, c] : terms)
        if (!sd::is_zero(c)) p.t_.push_back({m, std::move(c)});
    return p;
}

Rational MPoly::constant_value() const {
    if (!is_constant()) throw MathError("polynomial is not constant");
    return t_.empty() ? Rational(0) : t_[0].c;
}

bool MPoly::main_var(Var& v) const {
    bool found = false;
    for (const auto& t : t_) {
        for (std::size_t i = 0; i < t.m.width(); ++i) {
            if (t.m.exp(i) && (!found || i < v)) {
                v = i;
                found = true;
                break;
            }
        }
    }
    return found;
}

bool MPoly::has_var(Var v) const {
    for (const auto& t : t_)
        if (t.m.exp(v)) return true;
    return false;
}

unsigned MPoly::degree(Var v) const {
    unsigned d = 0;
    for (const auto& t : t_) d = std::max(d, t.m.exp(v));
    return d;
}

unsigned MPoly::total_degree() const {
    unsigned d = 0;
    for (const auto& t : t_) d = std::max(d, t.m.total_degree());
    return d;
}

std::vector<Var> MPoly::variables() const {
    std::vector<Var> out;
    for (const auto& t : t_)
        for (std::size_t i = 0; i < t.m.width(); ++i)
            if (t.m.exp(i) && std::find(out.begin(), out.end(), i) == out.end()) out.push_back(i);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<MPoly> MPoly::coeffs_in(Var v) const {
    std::vector<std::map<Monomial, Rational, MonoGreater>> buckets(degree(v) + 1);
    for (const auto& t : t_) buckets[t.m.exp(v)].emplace(t.m.with_exp(v, 0), t.c);
    std::vector<MPoly> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) out.push_back(from_map(std::move(b)));
    if (is_zero()) out.clear();
    return out;
}

MPoly MPoly::from_coeffs(Var v, const std::vector<MPoly>& c) {
    std::map<Monomial, Rational, MonoGreater> acc;
    for (std::size_t i = 0; i < c.size(); ++i)
        for (const auto& t : c[i].t_) acc[t.m * Monomial::of(v, static_cast<unsigned>(i))] += t.c;
    return from_map(std::move(acc));
}

MPoly MPoly::operator-() const {
    MPoly r = *this;
    for (auto& t : r.t_) t.c = -t.c;
    return r;
}

MPoly operator+(const MPoly& a, const MPoly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    std::vector<MPoly::Term> out;
    out.reserve(a.t_.size() + b.t_.size());
    std::size_t i = 0, j = 0;
    while (i < a.t_.size() || j < b.t_.size()) {
        int c = i == a.t_.size() ? -1 : j == b.t_.size() ? 1 : Monomial::cmp(a.t_[i].m, b.t_[j].m);
        if (c > 0) {
            out.push_back(a.t_[i++]);
        } else if (c < 0) {
            out.push_back(b.t_[j++]);
        } else {
            Rational s = a.t_[i].c + b.t_[j].c;
            if (!sd::is_zero(s)) out.push_back({a.t_[i].m, s});
            ++i;
            ++j;
        }
    }
    MPoly r;
    r.t_ = std::move(out);
    return r;
}

MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }

MPoly operator*(const MPoly& a, const MPoly& b) {
    if (a.is_zero() || b.is_zero()) return MPoly();
    if (a.t_.size() == 1 && a.t_[0].m.is_one()) return b.scaled(a.t_[0].c);
    if (b.t_.size() == 1 && b.t_[0].m.is_one()) return a.scaled(b.t_[0].c);
    std::map<Monomial, Rational, MonoGreater> acc;
    for (const auto& x : a.t_)
        for (const auto& y : b.t_) {
            auto [it, fresh] = acc.try_emplace(x.m * y.m, x.c * y.c);
            if (!fresh) it->second += x.c * y.c;
        }
    return MPoly::from_map(std::move(acc));
}

MPoly MPoly::scaled(const Rational& s) const {
    if (sd::is_zero(s)) return MPoly();
    MPoly r = *this;
    for (auto& t : r.t_) t.c *= s;
    return r;
}

MPoly MPoly::pow(unsigned e) const {
    MPoly r(1), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

bool operator==(const MPoly& a, const MPoly& b) {
    if (a.t_.size() != b.t_.size()) return false;
    for (std::size_t i = 0; i < a.t_.size(); ++i)
        if (!(a.t_[i].m == b.t_[i].m) || a.t_[i].c != b.t_[i].c) return false;
    return true;
}

bool MPoly::divides_into(const MPoly& f, MPoly& q) const {
    if (is_zero()) throw MathError("division by zero polynomial");
    const Term& ld = t_.front();
    if (t_.size() == 1) {
        // monomial divisor
        std::map<Monomial, Rational, MonoGreater> acc;
        for (const auto& t : f.t_) {
            if (!ld.m.divides(t.m)) return false;
            acc.emplace(t.m / ld.m, t.c / ld.c);
        }
        q = from_map(std::move(acc));
        return true;
    }
    MPoly r = f;
    std::map<Monomial, Rational, MonoGreater> acc;
    while (!r.is_zero()) {
        const Term& lr = r.t_.front();
        if (!ld.m.divides(lr.m)) return false;
        Monomial m = lr.m / ld.m;
        Rational c = lr.c / ld.c;
        acc.emplace(m, c);
        r = r - (*this * term(c, m));
    }
    q = from_map(std::move(acc));
    return true;
}

MPoly MPoly::divexact(const MPoly& d) const {
    MPoly q;
    if (!d.divides_into(*this, q)) throw MathError("inexact multivariate division");
    return q;
}

MPoly MPoly::derivative(Var v) const {
    std::map<Monomial, Rational, MonoGreater> acc;
    for (const auto& t : t_) {
        unsigned e = t.m.exp(v);
        if (!e) continue;
        acc[t.m.with_exp(v, e - 1)] += t.c * e;
    }
    return from_map(std::move(acc));
}

MPoly MPoly::substitute(Var v, const MPoly& value) const {
    if (!has_var(v)) return *this;
    auto c = coeffs_in(v);
    MPoly acc;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * value + c[i];
    return acc;
}

MPoly MPoly::evaluate(const std::map<Var, Rational>& values) const {
    std::map<Monomial, Rational, MonoGreater> acc;
    for (const auto& t : t_) {
        Monomial m = t.m;
        Rational c = t.c;
        for (const auto& [v, val] : values) {
            unsigned e = m.exp(v);
            if (!e) continue;
            Rational p;
            mpz_pow_ui(p.get_num_mpz_t(), val.get_num_mpz_t(), e);
            mpz_pow_ui(p.get_den_mpz_t(), val.get_den_mpz_t(), e);
            c *= p;
            m = m.with_exp(v, 0);
        }
        acc[m] += c;
    }
    return from_map(std::move(acc));
}

MPoly MPoly::monic() const {
    if (is_zero()) return *this;
    return scaled(Rational(1) / t_.front().c);
}

MPoly MPoly::primitive_integer() const {
    if (is_zero()) return *this;
    Integer den = 1, g = 0;
    for (const auto& t : t_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.c.get_den_mpz_t());
    for (const auto& t : t_) {
        Integer n = Integer(t.c * den);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    }
    Rational s(den, g);
    s.canonicalize();
    if (t_.front().c < 0) s = -s;
    return scaled(s);
}

std::string MPoly::to_string() const {
    if (t_.empty()) return "0";
    std::string out;
    for (const auto& t : t_) {
        std::string term;
        if (t.m.is_one()) term = t.c.get_str();
        else if (t.c == 1) term = t.m.to_string();
        else if (t.c == -1) term = "-" + t.m.to_string();
        else term = t.c.get_str() + "*" + t.m.to_string();
        if (!out.empty() && term[0] != '-') out += "+";
        out += term;
    }
    return out;
}

// ---------------- gcd ----------------

namespace {

MPoly content_in(const MPoly& p, Var v);

MPoly lc_in(const MPoly& p, Var v) {
    auto c = p.coeffs_in(v);
    return c.back();
}

MPoly prem(const MPoly& a, const MPoly& b, Var v) {
    unsigned db = b.degree(v);
    MPoly lb = lc_in(b, v);
    MPoly r = a;
    while (!r.is_zero() && r.degree(v) >= db) {
        unsigned dr = r.degree(v);
        MPoly lr = lc_in(r, v);
        r = lb * r - lr * MPoly::term(Rational(1), Monomial::of(v, dr - db)) * b;
    }
    return r;
}

MPoly primitive_in(const MPoly& p, Var v) {
    if (p.is_zero()) return p;
    MPoly c = content_in(p, v);
    return p.divexact(c).primitive_integer();
}

MPoly content_in(const MPoly& p, Var v) {
    auto cs = p.coeffs_in(v);
    MPoly g;
    for (const auto& c : cs) {
        if (c.is_zero()) continue;
        g = gcd(g, c);
        if (g.is_constant()) return MPoly(1);
    }
    return g;
}

} // namespace

MPoly gcd(const MPoly& a, const MPoly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return MPoly(1);
    if (a == b) return a.monic();
    Var va = 0, vb = 0;
    a.main_var(va);
    b.main_var(vb);
    Var v = std::min(va, vb);
    if (!a.has_var(v)) return gcd(a, content_in(b, v));
    if (!b.has_var(v)) return gcd(content_in(a, v), b);
    MPoly ca = content_in(a, v), cb = content_in(b, v);
    MPoly c = gcd(ca, cb);
    MPoly p = a.divexact(ca).primitive_integer(), q = b.divexact(cb).primitive_integer();
    if (p.degree(v) < q.degree(v)) std::swap(p, q);
    // quick exact-division checks
    MPoly quo;
    if (q.divides_into(p, quo)) return (c * q).monic();
    for (;;) {
        MPoly r = prem(p, q, v);
        if (r.is_zero()) break;
        if (r.degree(v) == 0) return c.monic();
        p = q;
        q = primitive_in(r, v);
    }
    return (c * primitive_in(q, v)).monic();
}

// ---------------- rational functions ----------------

RatFunc::RatFunc(const MPoly& n, const MPoly& d) {
    if (d.is_zero()) throw MathError("rational function with zero denominator");
    if (n.is_zero()) {
        num_ = MPoly();
        den_ = MPoly(1);
        return;
    }
    if (d.is_constant()) {
        num_ = n.scaled(Rational(1) / d.constant_value());
        den_ = MPoly(1);
        return;
    }
    MPoly g = gcd(n, d);
    MPoly nn = g.is_constant() ? n : n.divexact(g);
    MPoly dd = g.is_constant() ? d : d.divexact(g);
    Rational lc = dd.lead_coeff();
    num_ = nn.scaled(Rational(1) / lc);
    den_ = dd.scaled(Rational(1) / lc);
}

Rational RatFunc::constant_value() const {
    if (!is_constant()) throw MathError("rational function is not constant");
    return num_.constant_value() / den_.constant_value();
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_.is_constant() && b.den_.is_constant()) return RatFunc(a.num_ + b.num_);
    RatFunc r;
    if (b.den_.is_constant()) {
        r.num_ = a.num_ + b.num_ * a.den_;
        r.den_ = a.den_;
        if (r.num_.is_zero()) r.den_ = MPoly(1);
        return r;
    }
    if (a.den_.is_constant()) {
        r.num_ = b.num_ + a.num_ * b.den_;
        r.den_ = b.den_;
        if (r.num_.is_zero()) r.den_ = MPoly(1);
        return r;
    }
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    MPoly g = gcd(a.den_, b.den_);
    if (g.is_constant()) return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    MPoly da = a.den_.divexact(g), db = b.den_.divexact(g);
    return RatFunc(a.num_ * db + b.num_ * da, a.den_ * db);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc();
    if (a.den_.is_constant() && b.den_.is_constant()) return RatFunc(a.num_ * b.num_);
    MPoly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
    MPoly an = a.num_.divexact(g1), bd = b.den_.divexact(g1);
    MPoly bn = b.num_.divexact(g2), ad = a.den_.divexact(g2);
    RatFunc r;
    MPoly d = ad * bd;
    Rational lc = d.lead_coeff();
    r.num_ = (an * bn).scaled(Rational(1) / lc);
    r.den_ = d.scaled(Rational(1) / lc);
    return r;
}

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw MathError("inverse of zero rational function");
    RatFunc r;
    Rational lc = num_.lead_coeff();
    r.num_ = den_.scaled(Rational(1) / lc);
    r.den_ = num_.scaled(Rational(1) / lc);
    return r;
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

RatFunc RatFunc::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    RatFunc r;
    r.num_ = num_.pow(static_cast<unsigned>(e));
    r.den_ = den_.pow(static_cast<unsigned>(e));
    return r;
}

RatFunc RatFunc::derivative(Var v) const {
    if (den_.is_constant()) return RatFunc(num_.derivative(v));
    return RatFunc(num_.derivative(v) * den_ - num_ * den_.derivative(v), den_ * den_);
}

namespace {
RatFunc subst_poly(const MPoly& p, Var v, const RatFunc& value) {
    if (!p.has_var(v)) return RatFunc(p);
    auto c = p.coeffs_in(v);
    RatFunc acc;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * value + RatFunc(c[i]);
    return acc;
}
} // namespace

RatFunc RatFunc::substitute(Var v, const RatFunc& value) const {
    return subst_poly(num_, v, value) / subst_poly(den_, v, value);
}

RatFunc RatFunc::evaluate(const std::map<Var, Rational>& values) const {
    MPoly d = den_.evaluate(values);
    if (d.is_zero()) throw NonGenericParameter("denominator vanishes under specialization");
    return RatFunc(num_.evaluate(values), d);
}

std::vector<Var> RatFunc::variables() const {
    auto a = num_.variables();
    for (Var v : den_.variables())
        if (std::find(a.begin(), a.end(), v) == a.end()) a.push_back(v);
    std::sort(a.begin(), a.end());
    return a;
}

std::string RatFunc::to_string() const {
    if (den_.is_constant()) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

// ---------------- parser ----------------

namespace {

struct Parser {
    std::string_view s;
    std::size_t pos = 0;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw MathError("parse error at " + std::to_string(pos) + " in '" + std::string(s) + "': " + msg);
    }
    RatFunc expr() {
        RatFunc r = term();
        for (;;) {
            if (eat('+')) r = r + term();
            else if (eat('-')) r = r - term();
            else return r;
        }
    }
    RatFunc term() {
        RatFunc r = unary();
        for (;;) {
            if (eat('*')) r = r * unary();
            else if (eat('/')) r = r / unary();
            else return r;
        }
    }
    RatFunc unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }
    RatFunc power() {
        RatFunc base = atom();
        if (eat('^')) {
            bool paren = eat('(');
            bool neg = eat('-');
            skip();
            std::size_t st = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (st == pos) fail("expected exponent");
            int e = std::stoi(std::string(s.substr(st, pos - st)));
            if (paren && !eat(')')) fail("expected )");
            return base.pow(neg ? -e : e);
        }
        return base;
    }
    RatFunc atom() {
        skip();
        if (pos >= s.size()) fail("unexpected end");
        if (eat('(')) {
            RatFunc r = expr();
            if (!eat(')')) fail("expected )");
            return r;
        }
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t st = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            return RatFunc(Rational(Integer(std::string(s.substr(st, pos - st)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t st = pos;
            while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
            return RatFunc(MPoly::variable(s.substr(st, pos - st)));
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

} // namespace

RatFunc parse_ratfunc(std::string_view s) {
    Parser p{s};
    RatFunc r = p.expr();
    p.skip();
    if (p.pos != s.size()) p.fail("trailing input");
    return r;
}

QPoly parse_qpoly(std::string_view s, const std::string& name) {
    RatFunc f = parse_ratfunc(s);
    if (!f.is_polynomial()) throw MathError("expected a polynomial");
    Var v = var(name);
    MPoly p = f.num().scaled(Rational(1) / f.den().constant_value());
    for (Var w : p.variables())
        if (w != v) throw MathError("unexpected variable in univariate polynomial");
    std::vector<Rational> c;
    for (const auto& m : p.coeffs_in(v)) c.push_back(m.is_zero() ? Rational(0) : m.constant_value());
    return QPoly(std::move(c));
}

// ---------------- Laurent expansion ----------------

std::vector<RatFunc> laurent_coeffs(const RatFunc& f, Var u, const RatFunc& center, int lo, int hi,
                                    const std::map<Var, Rational>* spec) {
    if (hi < lo) return {};
    RatFunc shifted = center.is_zero() ? f : f.substitute(u, RatFunc(MPoly::variable(u)) + center);
    auto N = shifted.num().coeffs_in(u);
    auto D = shifted.den().coeffs_in(u);
    if (N.empty()) return std::vector<RatFunc>(static_cast<std::size_t>(hi - lo + 1));
    std::size_t vn = 0, vd = 0;
    while (N[vn].is_zero()) ++vn;
    while (D[vd].is_zero()) ++vd;
    if (spec && D[vd].evaluate(*spec).is_zero())
        throw NonGenericParameter("leading denominator coefficient vanishes at the specialization");
    int shift = static_cast<int>(vn) - static_cast<int>(vd);
    int need = hi - shift;
    std::vector<RatFunc> q;
    RatFunc d0inv = RatFunc(D[vd]).inverse();
    for (int k = 0; k <= need; ++k) {
        RatFunc acc = vn + k < N.size() ? RatFunc(N[vn + k]) : RatFunc();
        for (int i = 1; i <= k; ++i) {
            std::size_t di = vd + static_cast<std::size_t>(i);
            if (di >= D.size()) break;
            if (D[di].is_zero() || q[k - i].is_zero()) continue;
            acc = acc - RatFunc(D[di]) * q[k - i];
        }
        q.push_back(acc * d0inv);
    }
    std::vector<RatFunc> out;
    for (int k = lo; k <= hi; ++k) {
        int idx = k - shift;
        out.push_back(idx < 0 ? RatFunc() : q[static_cast<std::size_t>(idx)]);
    }
    return out;
}

} // namespace sd
