#pragma once

#include "surfdef/unipoly.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace sd {

struct Factorization {
    Rational unit{1};
    // Primitive integer factors with positive leading coefficient, sorted by (degree, coefficients).
    std::vector<std::pair<QPoly, int>> factors;

    QPoly expand() const;
    int multiplicity(const QPoly& f) const;
    std::string to_string(const std::string& var = "x") const;
};

// Yun square-free decomposition: p = lc * prod f_i^i with f_i monic and pairwise coprime.
std::vector<std::pair<QPoly, int>> squarefree_decomposition(const QPoly& p);

Factorization factor_over_Q(const QPoly& p);

// Integer primitive part with positive leading coefficient.
QPoly primitive_part(const QPoly& p);

QPoly cyclotomic_polynomial(unsigned n);

// Order k if p (irreducible) divides x^k - 1 for some k <= 2 deg(p)^2, else none.
std::optional<unsigned> cyclotomic_order(const QPoly& p);
inline bool is_cyclotomic(const QPoly& p) { return cyclotomic_order(p).has_value(); }

// Multiplicity of (x - r) in p.
int root_multiplicity(const QPoly& p, const Rational& r);

} // namespace sd
