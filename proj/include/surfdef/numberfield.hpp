#pragma once

#include "surfdef/unipoly.hpp"

#include <memory>
#include <optional>
#include <string>

namespace sd {

// Q[t]/(q) for a monic irreducible q.
struct NumberFieldCtx {
    QPoly modulus;
    std::string var = "t";
};

// An element without a context is a plain rational constant; it adopts the
// context of the other operand in mixed arithmetic.
class NFElem {
public:
    NFElem() = default;
    NFElem(int v) : p_(Rational(v)) {}
    NFElem(const Rational& v) : p_(v) {}
    NFElem(std::shared_ptr<const NumberFieldCtx> ctx, const QPoly& rep);

    static NFElem generator(std::shared_ptr<const NumberFieldCtx> ctx);

    const QPoly& rep() const { return p_; }
    const std::shared_ptr<const NumberFieldCtx>& ctx() const { return ctx_; }
    bool is_zero() const { return p_.is_zero(); }
    NFElem inverse() const;
    NFElem pow(long e) const;

    friend NFElem operator+(const NFElem& a, const NFElem& b);
    friend NFElem operator-(const NFElem& a, const NFElem& b);
    friend NFElem operator*(const NFElem& a, const NFElem& b);
    friend NFElem operator/(const NFElem& a, const NFElem& b) { return a * b.inverse(); }
    NFElem operator-() const { return NFElem(ctx_, -p_); }
    friend bool operator==(const NFElem& a, const NFElem& b) { return (a - b).is_zero(); }
    friend bool operator!=(const NFElem& a, const NFElem& b) { return !(a == b); }

    std::string to_string() const;

private:
    std::shared_ptr<const NumberFieldCtx> ctx_;
    QPoly p_;
};

inline bool is_zero(const NFElem& e) { return e.is_zero(); }
inline std::string to_string(const NFElem& e) { return e.to_string(); }

std::shared_ptr<const NumberFieldCtx> make_number_field(const QPoly& modulus, std::string var = "t");

// Smallest d with z^d = 1; only orders with phi(d) <= field degree are possible.
std::optional<unsigned> is_root_of_unity(const NFElem& z);

} // namespace sd
