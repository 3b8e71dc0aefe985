#include "surfdef/rational.hpp"

namespace sd {

std::string to_string(const Rational& r) { return r.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

Rational parse_rational(std::string_view s) {
    std::string t(s);
    while (!t.empty() && t.front() == ' ') t.erase(t.begin());
    while (!t.empty() && t.back() == ' ') t.pop_back();
    if (!t.empty() && t.front() == '+') t.erase(t.begin());
    Rational r;
    if (t.empty() || r.set_str(t, 10) != 0) throw MathError("bad rational literal: " + std::string(s));
    if (r.get_den() == 0) throw MathError("zero denominator: " + std::string(s));
    r.canonicalize();
    return r;
}

} // namespace sd
