#pragma once

#include "surfdef/quadratic.hpp"
#include "surfdef/unipoly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sd {

// Element of Q(zeta_N) in the power basis modulo the N-th cyclotomic polynomial.
// Operands of different conductors are lifted to the lcm conductor.
class Cyc {
public:
    Cyc() : n_(1) {}
    Cyc(int v) : Cyc(Rational(v)) {}
    Cyc(const Rational& v);
    Cyc(unsigned conductor, const QPoly& rep);

    static Cyc zeta(unsigned conductor, long k = 1);
    static Cyc from_quad(const QuadInt& z);
    static Cyc sqrt3();

    unsigned conductor() const { return n_; }
    const QPoly& rep() const { return p_; }
    Cyc lifted(unsigned m) const;
    Cyc conj() const;
    Cyc inverse() const;
    Cyc pow(long e) const;
    bool is_zero() const { return p_.is_zero(); }
    bool is_rational() const { return p_.degree() <= 0; }
    Rational rational_value() const;
    // |z|^2
    Cyc abs2() const { return *this * conj(); }

    friend Cyc operator+(const Cyc& a, const Cyc& b);
    friend Cyc operator-(const Cyc& a, const Cyc& b);
    friend Cyc operator*(const Cyc& a, const Cyc& b);
    friend Cyc operator/(const Cyc& a, const Cyc& b) { return a * b.inverse(); }
    Cyc operator-() const { return Cyc(n_, -p_); }
    friend bool operator==(const Cyc& a, const Cyc& b) { return (a - b).is_zero(); }
    friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

    std::string to_string() const;

private:
    unsigned n_;
    QPoly p_;
};

inline bool is_zero(const Cyc& c) { return c.is_zero(); }
inline std::string to_string(const Cyc& c) { return c.to_string(); }

// Smallest d with z^d = 1, searching divisors of lcm(2, conductor).
std::optional<unsigned> is_root_of_unity(const Cyc& z);
std::optional<unsigned> is_root_of_unity(const QuadInt& num, const QuadInt& den);

} // namespace sd
