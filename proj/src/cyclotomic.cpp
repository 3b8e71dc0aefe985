#include "surfdef/cyclotomic.hpp"

#include "surfdef/factor.hpp"

#include <numeric>

namespace sd {

namespace {
QPoly reduce(unsigned n, const QPoly& p) {
    if (n == 1) return QPoly(p.eval(Rational(1)));
    return p % cyclotomic_polynomial(n);
}
} // namespace

Cyc::Cyc(const Rational& v) : n_(1), p_(v) {}

Cyc::Cyc(unsigned conductor, const QPoly& rep) : n_(conductor), p_(reduce(conductor, rep)) {
    if (conductor == 0) throw MathError("conductor must be positive");
}

Cyc Cyc::zeta(unsigned conductor, long k) {
    long e = k % static_cast<long>(conductor);
    if (e < 0) e += conductor;
    return Cyc(conductor, QPoly::monomial(Rational(1), static_cast<std::size_t>(e)));
}

Cyc Cyc::from_quad(const QuadInt& z) {
    Cyc w = z.ring == QuadRing::Gauss ? zeta(4) : zeta(3);
    return Cyc(Rational(z.a)) + Cyc(Rational(z.b)) * w;
}

Cyc Cyc::sqrt3() {
    // -i(2j+1)
    Cyc i = zeta(4), j = zeta(3);
    return -(i * (Cyc(2) * j + Cyc(1)));
}

Cyc Cyc::lifted(unsigned m) const {
    if (m == n_) return *this;
    if (m % n_ != 0) throw MathError("conductor lift must be a multiple");
    unsigned s = m / n_;
    std::vector<Rational> c(static_cast<std::size_t>(std::max(0, p_.degree())) * s + 1, Rational(0));
    for (int i = 0; i <= p_.degree(); ++i) c[static_cast<std::size_t>(i) * s] = p_.coeff(i);
    return Cyc(m, QPoly(std::move(c)));
}

Cyc Cyc::conj() const {
    if (n_ == 1) return *this;
    std::vector<Rational> c(n_, Rational(0));
    for (int i = 0; i <= p_.degree(); ++i) c[(n_ - static_cast<unsigned>(i)) % n_] += p_.coeff(i);
    return Cyc(n_, QPoly(std::move(c)));
}

Cyc Cyc::inverse() const {
    if (is_zero()) throw MathError("inverse of zero in cyclotomic field");
    if (n_ == 1) return Cyc(Rational(1) / p_.coeff(0));
    auto g = xgcd(p_, cyclotomic_polynomial(n_));
    if (g.g.degree() != 0) throw MathError("non-invertible cyclotomic element");
    return Cyc(n_, g.s);
}

Cyc Cyc::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Cyc r(1), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

Rational Cyc::rational_value() const {
    if (!is_rational()) throw MathError("cyclotomic element is not rational");
    return p_.coeff(0);
}

Cyc operator+(const Cyc& a, const Cyc& b) {
    unsigned m = std::lcm(a.n_, b.n_);
    return Cyc(m, a.lifted(m).p_ + b.lifted(m).p_);
}
Cyc operator-(const Cyc& a, const Cyc& b) {
    unsigned m = std::lcm(a.n_, b.n_);
    return Cyc(m, a.lifted(m).p_ - b.lifted(m).p_);
}
Cyc operator*(const Cyc& a, const Cyc& b) {
    unsigned m = std::lcm(a.n_, b.n_);
    return Cyc(m, a.lifted(m).p_ * b.lifted(m).p_);
}

std::string Cyc::to_string() const {
    if (n_ == 1 || is_rational()) return sd::to_string(p_.coeff(0));
    return p_.to_string("z" + std::to_string(n_));
}

std::optional<unsigned> is_root_of_unity(const Cyc& z) {
    if (z.is_zero()) throw MathError("is_root_of_unity of zero");
    unsigned m = std::lcm(2u, z.conductor());
    for (unsigned d = 1; d <= m; ++d) {
        if (m % d) continue;
        if (z.pow(d) == Cyc(1)) return d;
    }
    return std::nullopt;
}

std::optional<unsigned> is_root_of_unity(const QuadInt& num, const QuadInt& den) {
    return is_root_of_unity(Cyc::from_quad(num) / Cyc::from_quad(den));
}

} // namespace sd
