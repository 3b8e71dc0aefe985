#pragma once

#include "surfdef/rational.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace sd {

enum class QuadRing { Eisenstein, Gauss };

// a + b*w with w = j (j^2 + j + 1 = 0) or w = i (i^2 = -1).
struct QuadInt {
    QuadRing ring = QuadRing::Eisenstein;
    Integer a = 0, b = 0;

    QuadInt() = default;
    QuadInt(QuadRing r, Integer a_, Integer b_ = 0) : ring(r), a(std::move(a_)), b(std::move(b_)) {}

    static QuadInt unit_w(QuadRing r) { return QuadInt(r, 0, 1); }

    QuadInt conj() const;
    Integer norm() const;
    bool is_zero() const { return a == 0 && b == 0; }
    bool is_unit() const { return norm() == 1; }
    QuadInt pow(unsigned e) const;
    // Exact quotient when it exists in the ring.
    std::optional<QuadInt> divexact(const QuadInt& d) const;
    std::string to_string() const;
};

QuadInt operator+(const QuadInt& x, const QuadInt& y);
QuadInt operator-(const QuadInt& x, const QuadInt& y);
QuadInt operator-(const QuadInt& x);
QuadInt operator*(const QuadInt& x, const QuadInt& y);
bool operator==(const QuadInt& x, const QuadInt& y);
inline bool operator!=(const QuadInt& x, const QuadInt& y) { return !(x == y); }

// Literals like "1+2j", "-j", "3-i", "5", "2*j".
QuadInt parse_quadint(std::string_view s, QuadRing ring);

} // namespace sd
