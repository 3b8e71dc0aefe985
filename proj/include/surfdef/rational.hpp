#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace sd {

using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
inline bool is_one(const Rational& r) { return r == 1; }

std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

// Accepts "a", "-a", "a/b".
Rational parse_rational(std::string_view s);

class MathError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when a leading Laurent coefficient vanishes at the chosen parameter values.
class NonGenericParameter : public MathError {
public:
    using MathError::MathError;
};

} // namespace sd
