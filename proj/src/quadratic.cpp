#include "surfdef/quadratic.hpp"

#include <cctype>

namespace sd {

namespace {
void check_same(const QuadInt& x, const QuadInt& y) {
    if (x.ring != y.ring) throw MathError("mixing Eisenstein and Gauss integers");
}
} // namespace

QuadInt operator+(const QuadInt& x, const QuadInt& y) {
    check_same(x, y);
    return QuadInt(x.ring, x.a + y.a, x.b + y.b);
}
QuadInt operator-(const QuadInt& x, const QuadInt& y) {
    check_same(x, y);
    return QuadInt(x.ring, x.a - y.a, x.b - y.b);
}
QuadInt operator-(const QuadInt& x) { return QuadInt(x.ring, -x.a, -x.b); }

QuadInt operator*(const QuadInt& x, const QuadInt& y) {
    check_same(x, y);
    Integer bb = x.b * y.b;
    if (x.ring == QuadRing::Gauss) return QuadInt(x.ring, x.a * y.a - bb, x.a * y.b + x.b * y.a);
    // j^2 = -1 - j
    return QuadInt(x.ring, x.a * y.a - bb, x.a * y.b + x.b * y.a - bb);
}

bool operator==(const QuadInt& x, const QuadInt& y) { return x.ring == y.ring && x.a == y.a && x.b == y.b; }

QuadInt QuadInt::conj() const {
    if (ring == QuadRing::Gauss) return QuadInt(ring, a, -b);
    return QuadInt(ring, a - b, -b);
}

Integer QuadInt::norm() const {
    if (ring == QuadRing::Gauss) return a * a + b * b;
    return a * a - a * b + b * b;
}

QuadInt QuadInt::pow(unsigned e) const {
    QuadInt r(ring, 1), base = *this;
    while (e) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

std::optional<QuadInt> QuadInt::divexact(const QuadInt& d) const {
    check_same(*this, d);
    Integer n = d.norm();
    if (n == 0) throw MathError("division by zero in quadratic ring");
    QuadInt num = *this * d.conj();
    if (!mpz_divisible_p(num.a.get_mpz_t(), n.get_mpz_t()) || !mpz_divisible_p(num.b.get_mpz_t(), n.get_mpz_t()))
        return std::nullopt;
    return QuadInt(ring, num.a / n, num.b / n);
}

std::string QuadInt::to_string() const {
    const char* w = ring == QuadRing::Gauss ? "i" : "j";
    if (b == 0) return a.get_str();
    std::string bs;
    if (b == 1) bs = w;
    else if (b == -1) bs = std::string("-") + w;
    else bs = b.get_str() + w;
    if (a == 0) return bs;
    if (b < 0) return a.get_str() + bs;
    return a.get_str() + "+" + bs;
}

QuadInt parse_quadint(std::string_view s, QuadRing ring) {
    const char w = ring == QuadRing::Gauss ? 'i' : 'j';
    QuadInt r(ring, 0, 0);
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    };
    skip();
    if (pos == s.size()) throw MathError("empty quadratic literal");
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            if (s[pos] == '-') sign = -1;
            ++pos;
            skip();
        }
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        Integer coef = 1;
        bool has_digits = pos > start;
        if (has_digits) coef = Integer(std::string(s.substr(start, pos - start)));
        skip();
        if (pos < s.size() && s[pos] == '*') {
            ++pos;
            skip();
        }
        if (pos < s.size() && s[pos] == w) {
            ++pos;
            r.b += sign * coef;
        } else {
            if (!has_digits) throw MathError("bad quadratic literal: " + std::string(s));
            r.a += sign * coef;
        }
        skip();
        if (pos < s.size() && s[pos] != '+' && s[pos] != '-')
            throw MathError("bad quadratic literal: " + std::string(s));
    }
    return r;
}

} // namespace sd
