#pragma once

#include "surfdef/rational.hpp"
#include "surfdef/unipoly.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sd {

// Process-wide variable registry. Index order defines the lexicographic
// monomial order (lower index = more significant). A fixed list of names is
// registered up front so that normal forms do not depend on call order.
class VarRegistry {
public:
    static std::size_t index(std::string_view name);
    static std::string name(std::size_t idx);
    static std::size_t size();
};

using Var = std::size_t;
inline Var var(std::string_view name) { return VarRegistry::index(name); }

// Exponent vector with trailing zeros stripped.
class Monomial {
public:
    Monomial() = default;
    static Monomial of(Var v, unsigned e = 1);

    unsigned exp(Var v) const { return v < e_.size() ? e_[v] : 0; }
    bool is_one() const { return e_.empty(); }
    unsigned total_degree() const;
    std::size_t width() const { return e_.size(); }

    Monomial operator*(const Monomial& o) const;
    // requires divisibility
    Monomial operator/(const Monomial& o) const;
    bool divides(const Monomial& o) const;
    Monomial with_exp(Var v, unsigned e) const;

    // lex comparison: -1, 0, 1
    static int cmp(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }

    std::string to_string() const;

private:
    void trim();
    std::vector<std::uint32_t> e_;
};

struct MonoGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return Monomial::cmp(a, b) > 0; }
};

class MPoly {
public:
    struct Term {
        Monomial m;
        Rational c;
    };

    MPoly() = default;
    MPoly(int c) : MPoly(Rational(c)) {}
    MPoly(const Rational& c);
    static MPoly variable(Var v);
    static MPoly variable(std::string_view name) { return variable(var(name)); }
    static MPoly term(const Rational& c, const Monomial& m);
    static MPoly from_map(std::map<Monomial, Rational, MonoGreater>&& terms);

    const std::vector<Term>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].m.is_one()); }
    Rational constant_value() const;
    const Term& lead() const { return t_.front(); }
    Rational lead_coeff() const { return t_.empty() ? Rational(0) : t_.front().c; }

    // smallest-index variable that occurs, or none (returns false)
    bool main_var(Var& v) const;
    bool has_var(Var v) const;
    unsigned degree(Var v) const;
    unsigned total_degree() const;
    std::vector<Var> variables() const;
    // coefficients of v^0, v^1, ... (polys free of v)
    std::vector<MPoly> coeffs_in(Var v) const;
    static MPoly from_coeffs(Var v, const std::vector<MPoly>& c);

    MPoly operator-() const;
    friend MPoly operator+(const MPoly& a, const MPoly& b);
    friend MPoly operator-(const MPoly& a, const MPoly& b);
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
    MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
    MPoly scaled(const Rational& s) const;
    MPoly pow(unsigned e) const;
    friend bool operator==(const MPoly& a, const MPoly& b);
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

    // exact quotient; throws if not divisible
    MPoly divexact(const MPoly& d) const;
    bool divides_into(const MPoly& f, MPoly& q) const;

    MPoly derivative(Var v) const;
    MPoly substitute(Var v, const MPoly& value) const;
    MPoly evaluate(const std::map<Var, Rational>& values) const;

    // lc = 1
    MPoly monic() const;
    // integer coefficients with gcd 1 and positive leading coefficient
    MPoly primitive_integer() const;

    std::string to_string() const;

private:
    std::vector<Term> t_; // strictly decreasing in lex order, nonzero coefficients
};

inline bool is_zero(const MPoly& p) { return p.is_zero(); }
inline std::string to_string(const MPoly& p) { return p.to_string(); }

// gcd normalized to leading coefficient 1
MPoly gcd(const MPoly& a, const MPoly& b);

// Reduced fraction with denominator of leading coefficient 1.
class RatFunc {
public:
    RatFunc() : num_(0), den_(1) {}
    RatFunc(int c) : num_(c), den_(1) {}
    RatFunc(const Rational& c) : num_(c), den_(1) {}
    RatFunc(const MPoly& p) : num_(p), den_(1) {}
    RatFunc(const MPoly& n, const MPoly& d);
    static RatFunc variable(std::string_view name) { return RatFunc(MPoly::variable(name)); }

    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rational constant_value() const;

    RatFunc operator-() const;
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }
    RatFunc inverse() const;
    RatFunc pow(int e) const;

    RatFunc derivative(Var v) const;
    RatFunc substitute(Var v, const RatFunc& value) const;
    // throws NonGenericParameter if the denominator vanishes
    RatFunc evaluate(const std::map<Var, Rational>& values) const;
    std::vector<Var> variables() const;

    std::string to_string() const;

private:
    MPoly num_, den_;
};

inline bool is_zero(const RatFunc& f) { return f.is_zero(); }
inline std::string to_string(const RatFunc& f) { return f.to_string(); }

// Parses + - * / ^ ( ), integer literals and identifiers.
RatFunc parse_ratfunc(std::string_view s);
inline MPoly parse_mpoly(std::string_view s) {
    RatFunc f = parse_ratfunc(s);
    if (!f.is_polynomial()) throw MathError("expected a polynomial: " + std::string(s));
    return f.num().scaled(Rational(1) / f.den().constant_value());
}

// Coefficients of (u - center)^k, lo <= k <= hi, of f viewed as a Laurent
// series in u with the other variables as parameters. With `spec` given, the
// leading denominator coefficient is also required not to vanish under that
// specialization (else NonGenericParameter).
std::vector<RatFunc> laurent_coeffs(const RatFunc& f, Var u, const RatFunc& center, int lo, int hi,
                                    const std::map<Var, Rational>* spec = nullptr);

using ParamAssignment = std::map<Var, Rational>;

} // namespace sd
