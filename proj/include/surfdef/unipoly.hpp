#pragma once

#include "surfdef/rational.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace sd {

// Coefficient predicates found by argument-dependent lookup at instantiation time.
namespace coeff {
using sd::is_zero;
using sd::to_string;
template <class K>
bool zero(const K& a) {
    return is_zero(a);
}
template <class K>
std::string str(const K& a) {
    return to_string(a);
}
} // namespace coeff

// Dense univariate polynomial, coefficients low to high.
// K must provide +, -, *, / (by nonzero), K(int), is_zero(K), to_string(K).
template <class K>
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<K> c) : c_(std::move(c)) { trim(); }
    UniPoly(const K& constant) : c_{constant} { trim(); }
    UniPoly(int constant) : c_{K(constant)} { trim(); }

    static UniPoly x() { return UniPoly(std::vector<K>{K(0), K(1)}); }
    static UniPoly monomial(const K& c, std::size_t deg) {
        std::vector<K> v(deg + 1, K(0));
        v[deg] = c;
        return UniPoly(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<K>& coeffs() const { return c_; }
    K coeff(std::size_t i) const { return i < c_.size() ? c_[i] : K(0); }
    K lead() const { return c_.empty() ? K(0) : c_.back(); }

    UniPoly operator-() const {
        UniPoly r = *this;
        for (auto& a : r.c_) a = -a;
        return r;
    }
    UniPoly& operator+=(const UniPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), K(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
        trim();
        return *this;
    }
    UniPoly& operator-=(const UniPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), K(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
        trim();
        return *this;
    }
    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return UniPoly();
        std::vector<K> r(a.c_.size() + b.c_.size() - 1, K(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (coeff::zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        }
        return UniPoly(std::move(r));
    }
    UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }
    UniPoly scaled(const K& s) const {
        UniPoly r = *this;
        for (auto& a : r.c_) a = a * s;
        r.trim();
        return r;
    }
    friend bool operator==(const UniPoly& a, const UniPoly& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (!coeff::zero(a.c_[i] - b.c_[i])) return false;
        return true;
    }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

    // Quotient and remainder over a field.
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
        if (d.is_zero()) throw MathError("polynomial division by zero");
        std::vector<K> r = c_;
        if (r.size() < d.c_.size()) return {UniPoly(), *this};
        std::vector<K> q(r.size() - d.c_.size() + 1, K(0));
        K li = K(1) / d.lead();
        for (std::size_t k = q.size(); k-- > 0;) {
            K t = r[k + d.c_.size() - 1] * li;
            q[k] = t;
            if (coeff::zero(t)) continue;
            for (std::size_t j = 0; j < d.c_.size(); ++j) r[k + j] = r[k + j] - t * d.c_[j];
        }
        r.resize(d.c_.size() - 1);
        return {UniPoly(std::move(q)), UniPoly(std::move(r))};
    }
    friend UniPoly operator/(const UniPoly& a, const UniPoly& b) { return a.divmod(b).first; }
    friend UniPoly operator%(const UniPoly& a, const UniPoly& b) { return a.divmod(b).second; }

    // Exact division in an integral domain where the field division is exact on coefficients
    // (used for fraction-free elimination over K[x]).
    UniPoly exact_div(const UniPoly& d) const {
        auto [q, r] = divmod(d);
        if (!r.is_zero()) throw MathError("inexact polynomial division");
        return q;
    }

    UniPoly monic() const {
        if (is_zero()) return *this;
        return scaled(K(1) / lead());
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return UniPoly();
        std::vector<K> r(c_.size() - 1, K(0));
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * K(static_cast<int>(i));
        return UniPoly(std::move(r));
    }

    template <class T>
    T eval(const T& x) const {
        T acc = T(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + T(c_[i]);
        return acc;
    }

    UniPoly compose(const UniPoly& g) const {
        UniPoly acc;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * g + UniPoly(c_[i]);
        return acc;
    }

    UniPoly pow(unsigned e) const {
        UniPoly r(1), b = *this;
        while (e) {
            if (e & 1) r *= b;
            e >>= 1;
            if (e) b *= b;
        }
        return r;
    }

    // x^deg p(1/x)
    UniPoly reversed(std::size_t deg) const {
        std::vector<K> r(deg + 1, K(0));
        for (std::size_t i = 0; i < c_.size() && i <= deg; ++i) r[deg - i] = c_[i];
        return UniPoly(std::move(r));
    }

    std::string to_string(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (coeff::zero(c_[i])) continue;
            std::string cs = coeff::str(c_[i]);
            bool simple = cs.find_first_of("+-", 1) == std::string::npos && cs.find('/') == std::string::npos;
            if (!simple) cs = "(" + cs + ")";
            std::string term;
            if (i == 0) {
                term = cs;
            } else {
                if (cs == "1") term = "";
                else if (cs == "-1") term = "-";
                else term = cs + "*";
                term += var;
                if (i > 1) term += "^" + std::to_string(i);
            }
            if (!out.empty()) {
                if (term[0] == '-') out += " - " + term.substr(1);
                else out += " + " + term;
            } else {
                out = term;
            }
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && coeff::zero(c_.back())) c_.pop_back();
    }
    std::vector<K> c_;
};

template <class K>
UniPoly<K> gcd(UniPoly<K> a, UniPoly<K> b) {
    while (!b.is_zero()) {
        UniPoly<K> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// Returns (g, s, t) with s*a + t*b = g monic.
template <class K>
struct XGcd {
    UniPoly<K> g, s, t;
};

template <class K>
XGcd<K> xgcd(const UniPoly<K>& a, const UniPoly<K>& b) {
    UniPoly<K> r0 = a, r1 = b, s0(1), s1, t0, t1(1);
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        UniPoly<K> s2 = s0 - q * s1, t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    K li = K(1) / r0.lead();
    return {r0.scaled(li), s0.scaled(li), t0.scaled(li)};
}

using QPoly = UniPoly<Rational>;

QPoly parse_qpoly(std::string_view s, const std::string& var = "x");

} // namespace sd
