#pragma once

#include "surfdef/rational.hpp"

#include <algorithm>
#include <climits>
#include <vector>

namespace sd {

// a + b*eps with eps^2 = 0. The eps part carries a first-order displacement
// of the generic point along an exceptional divisor.
template <class S>
struct Dual {
    S a{0}, b{0};
    Dual() = default;
    Dual(const S& a_) : a(a_), b(0) {}
    Dual(const S& a_, const S& b_) : a(a_), b(b_) {}

    bool zero() const { return is_zero(a) && is_zero(b); }
    Dual operator-() const { return {-a, -b}; }
    friend Dual operator+(const Dual& x, const Dual& y) { return {x.a + y.a, x.b + y.b}; }
    friend Dual operator-(const Dual& x, const Dual& y) { return {x.a - y.a, x.b - y.b}; }
    friend Dual operator*(const Dual& x, const Dual& y) { return {x.a * y.a, x.a * y.b + x.b * y.a}; }
    Dual inverse() const {
        if (is_zero(a)) throw NonGenericParameter("dual number with vanishing value part");
        S ia = S(1) / a;
        return {ia, -(b * ia * ia)};
    }
};

// Raised when a truncated series no longer determines a requested coefficient.
struct PrecisionExhausted : MathError {
    PrecisionExhausted() : MathError("series precision exhausted") {}
};

// Truncated Laurent series in one variable U over Dual<S>:
// sum_{e >= val} c[e - val] U^e, known modulo U^prec (prec == kExact: exact).
template <class S>
class Series {
public:
    using D = Dual<S>;
    static constexpr int kExact = INT_MAX / 4;

    Series() = default;
    Series(const D& c) : v_(0), c_{c}, p_(kExact) { norm(); }
    Series(const S& c) : Series(D(c)) {}
    Series(int c) : Series(D(S(c))) {}
    Series(int val, std::vector<D> c, int prec) : v_(val), c_(std::move(c)), p_(prec) { norm(); }

    static Series U() { return Series(1, {D(S(1))}, kExact); }

    // Number of series terms produced by inversion; set per thread.
    static int& work_precision() {
        thread_local int prec = 40;
        return prec;
    }

    bool is_zero() const { return c_.empty(); }
    bool exact_zero() const { return c_.empty() && p_ == kExact; }
    int valuation() const { return v_; }
    int precision() const { return p_; }

    D coeff(int e) const {
        if (e >= p_) throw PrecisionExhausted();
        return raw(e);
    }

    Series operator-() const {
        std::vector<D> c(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
        return Series(v_, std::move(c), p_);
    }

    friend Series operator+(const Series& s, const Series& o) {
        if (s.exact_zero()) return o;
        if (o.exact_zero()) return s;
        int p = std::min(s.p_, o.p_);
        int v = std::min(s.v_, o.v_);
        int top = p < kExact ? p : std::max(s.top(), o.top());
        std::vector<D> c;
        if (top > v) c.reserve(top - v);
        for (int e = v; e < top; ++e) c.push_back(s.raw(e) + o.raw(e));
        return Series(v, std::move(c), p);
    }
    friend Series operator-(const Series& s, const Series& o) { return s + (-o); }

    friend Series operator*(const Series& s, const Series& o) {
        if (s.exact_zero() || o.exact_zero()) return Series();
        long sv = s.v_, ov = o.v_;
        long p1 = s.p_ >= kExact ? kExact : long(s.p_) + (o.c_.empty() ? o.p_ : ov);
        long p2 = o.p_ >= kExact ? kExact : long(o.p_) + (s.c_.empty() ? s.p_ : sv);
        int p = int(std::min<long>({p1, p2, kExact}));
        int v = int(sv + ov);
        long top = p < kExact ? p : v + long(s.c_.size() + o.c_.size());
        long n = top - v;
        if (n <= 0) return Series(v, {}, p);
        std::vector<D> c(n);
        for (std::size_t i = 0; i < s.c_.size() && long(i) < n; ++i) {
            if (s.c_[i].zero()) continue;
            for (std::size_t j = 0; j < o.c_.size() && long(i + j) < n; ++j) {
                const D& x = s.c_[i];
                const D& y = o.c_[j];
                c[i + j].a += x.a * y.a;
                c[i + j].b += x.a * y.b + x.b * y.a;
            }
        }
        return Series(v, std::move(c), p);
    }

    Series inverse() const {
        if (c_.empty()) throw PrecisionExhausted();
        D li = c_[0].inverse();
        int wp = work_precision();
        int p = p_ < kExact ? std::min(p_ - 2 * v_, wp) : wp;
        int n = p + v_;
        if (n <= 0) return Series(-v_, {}, p);
        std::vector<D> out;
        out.reserve(n);
        for (int k = 0; k < n; ++k) {
            if (k == 0) {
                out.push_back(li);
                continue;
            }
            D acc;
            int lim = std::min<int>(k, int(c_.size()) - 1);
            for (int j = 1; j <= lim; ++j) acc = acc + c_[j] * out[k - j];
            out.push_back((-acc) * li);
        }
        return Series(-v_, std::move(out), p);
    }

    friend Series operator/(const Series& s, const Series& o) { return s * o.inverse(); }
    Series& operator+=(const Series& o) { return *this = *this + o; }
    Series& operator-=(const Series& o) { return *this = *this - o; }
    Series& operator*=(const Series& o) { return *this = *this * o; }

    Series pow(unsigned e) const {
        Series r(1), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            e >>= 1;
            if (e) b = b * b;
        }
        return r;
    }

private:
    D raw(int e) const {
        long i = long(e) - v_;
        if (i >= 0 && i < long(c_.size())) return c_[i];
        return D();
    }
    int top() const { return v_ + int(c_.size()); }

    void norm() {
        if (p_ < kExact) {
            long n = std::max<long>(0, long(p_) - v_);
            if (long(c_.size()) > n) c_.resize(n);
        }
        std::size_t lead = 0;
        while (lead < c_.size() && c_[lead].zero()) ++lead;
        if (lead) {
            c_.erase(c_.begin(), c_.begin() + lead);
            v_ += int(lead);
        }
        while (!c_.empty() && c_.back().zero()) c_.pop_back();
        if (c_.empty()) v_ = p_ < kExact ? p_ : 0;
    }

    int v_ = 0;
    std::vector<D> c_;
    int p_ = kExact;
};

} // namespace sd
