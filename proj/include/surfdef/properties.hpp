#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sd {

// Outcome of a seeded randomized property check.
struct PropertyReport {
    std::string name;
    int cases = 0;
    int failures = 0;
    std::string first_failure;
    bool ok() const { return failures == 0; }
};

// Associativity, commutativity, distributivity and inverses in Q, Q[t]/(f) and Q(zeta_n).
PropertyReport check_field_axioms(std::uint64_t seed, int cases);
// p/q expanded as a Laurent series over dual numbers, multiplied back by q, gives p.
PropertyReport check_laurent_resummation(std::uint64_t seed, int cases);
// chi_M(M) = 0 for random rational matrices.
PropertyReport check_cayley_hamilton(std::uint64_t seed, int cases);
// Block upper triangular matrices with invertible diagonal blocks are invertible, with a
// block upper triangular inverse and determinant the product of the block determinants.
PropertyReport check_block_triangular_inverse(std::uint64_t seed, int cases);
// (g o h)_* = g_* o h_* for vector fields and birational maps of the plane.
PropertyReport check_pushforward_functoriality(std::uint64_t seed, int cases);

std::vector<PropertyReport> run_property_suites(std::uint64_t seed, int cases);

} // namespace sd
