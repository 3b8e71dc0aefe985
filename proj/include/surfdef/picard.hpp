#pragma once

#include "surfdef/matrix.hpp"
#include "surfdef/quadratic.hpp"

#include <string>
#include <vector>

namespace sd {

using IntVec = std::vector<Rational>;

// Integral lattice in a fixed basis. Entries are kept as Rational but are always integers.
struct PicLattice {
    std::vector<std::string> labels;
    Matrix<Rational> gram;
    IntVec canonical;

    std::size_t rank() const { return labels.size(); }
    Rational dot(const IntVec& a, const IntVec& b) const;
    IntVec basis_vector(std::size_t i) const;
    std::size_t index_of(const std::string& label) const;
};

// H, E1..En with gram diag(1,-1,...,-1) and K = -3H + sum Ei.
PicLattice blowup_lattice(std::size_t n);

// Columns are the images f*(e_j) of the basis vectors.
struct LatticeIsometry {
    Matrix<Rational> m;

    IntVec apply(const IntVec& v) const;
    bool preserves(const PicLattice& L) const;
    LatticeIsometry operator*(const LatticeIsometry& o) const { return {m * o.m}; }
    QPoly charpoly() const { return sd::charpoly(m); }
};

// Throws if the gram form or the canonical class is not preserved.
void require_isometry(const PicLattice& L, const LatticeIsometry& g);

// Lift of the involution sigma_p with base points {p, p1..p4} given by basis indices.
LatticeIsometry blanc_involution(const PicLattice& L, const std::vector<std::size_t>& points);

// f_alpha*(D) = D - m(D.K) alpha + {m(D.alpha) - (m^2/2)(D.K) alpha^2} K.
LatticeIsometry halphen_action(const PicLattice& L, const IntVec& alpha, int m);

// (x-1)^9 (x-|a|^2)(x-|b|^2)(x-conj(a) b)(x-a conj(b)) for the eigenvalues a, b of M.
QPoly kummer_pic_charpoly(const std::array<std::array<QuadInt, 2>, 2>& M);

} // namespace sd
