#pragma once

#include "surfdef/cyclotomic.hpp"
#include "surfdef/matrix.hpp"
#include "surfdef/quadratic.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sd {

using QuadMat = std::array<std::array<QuadInt, 2>, 2>;

QuadMat make_quad_mat(const QuadInt& a, const QuadInt& b, const QuadInt& c, const QuadInt& d);
QuadMat quad_identity(QuadRing ring);
QuadMat operator*(const QuadMat& x, const QuadMat& y);
bool operator==(const QuadMat& x, const QuadMat& y);
QuadInt det(const QuadMat& m);
QuadInt trace(const QuadMat& m);
// Inverse over the ring; the determinant must be a unit.
QuadMat inverse(const QuadMat& m);
// "a,b;c,d" with quadratic-ring literals.
QuadMat parse_quad_mat(const std::string& s, QuadRing ring);
std::string to_string(const QuadMat& m);

// The torsion points permuted by f_M, read from their coordinates modulo the lattice.
struct KummerAction {
    QuadRing ring;
    QuadMat M;
    // Eisenstein: sigma on the nine points fixed by j.
    // Gauss: sigma on the four points fixed by i, and (xi, eta) on the six pairs {p_k, p'_k}.
    std::vector<int> sigma;
    std::vector<int> xi;
    std::vector<int> eta;

    static KummerAction from_matrix(const QuadMat& M);
};

// Cycle lengths of a permutation.
std::vector<int> cycle_type(const std::vector<int>& perm);

// Characteristic polynomial of the action on H^1(X, TX), exact in Q(zeta_3) or Q(zeta_4).
UniPoly<Cyc> kummer_h1_charpoly(const KummerAction& K);
// The polynomial with rational coefficients when it has them.
std::optional<QPoly> rational_poly(const UniPoly<Cyc>& p);

bool is_infinitesimally_rigid(const KummerAction& K);

// Members of H: SL(2, Z[j]) and congruent to Id modulo (1 - j).
bool in_congruence_subgroup_H(const QuadMat& M);

struct LefschetzCounts {
    Integer fix_torus;  // fixed points of f_M on the abelian surface
    Integer fix_kummer; // fixed points of the lift on X
    Integer s1, s2, s3; // fixed points outside S of f_M, j^2 f_M, j f_M
};
// |1 - Tr P + det P|^2 for P without eigenvalue 1.
Integer torus_fixed_points(const QuadMat& P);
LefschetzCounts lefschetz_counts(const QuadMat& M);

struct AtiyahBottTrace {
    Cyc closed_form;                 // 8 Tr(M)
    std::optional<Cyc> pointwise;    // sum over fixed point classes, when all are non-degenerate
    Cyc theta1, theta2;              // contributions sum Tr(df^-1)/det(1 - df) of each class
};
AtiyahBottTrace atiyah_bott_trace(const QuadMat& M);

// Degree of psi_M from the hermitian form in the entries of M.
long cremona_degree(const QuadMat& M);

// Homogeneous polynomial in x, y, z with coefficients in a cyclotomic field.
class HomPoly {
public:
    using Exp = std::array<int, 3>;
    HomPoly() = default;
    static HomPoly var(int i);
    static HomPoly constant(const Cyc& c);

    const std::map<Exp, Cyc>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    int degree() const;
    void add(const Exp& e, const Cyc& c);
    HomPoly operator+(const HomPoly& o) const;
    HomPoly operator-(const HomPoly& o) const;
    HomPoly operator*(const HomPoly& o) const;
    HomPoly scaled(const Cyc& c) const;
    HomPoly pow(unsigned e) const;
    HomPoly substitute(const std::array<HomPoly, 3>& g) const;
    friend bool operator==(const HomPoly& a, const HomPoly& b);
    std::string to_string() const;

private:
    std::map<Exp, Cyc> t_;
};

// (x:y:z) -> (f0:f1:f2), stored without common factor.
struct CremonaMap {
    std::array<HomPoly, 3> f;
    int degree() const { return f[0].degree(); }
    bool is_identity() const;
};

// Greatest common divisor of homogeneous polynomials, up to a scalar.
HomPoly hom_gcd(const HomPoly& a, const HomPoly& b);
// Exact quotient; throws when b does not divide a.
HomPoly hom_div(const HomPoly& a, const HomPoly& b);

CremonaMap reduce_cremona(std::array<HomPoly, 3> f);
// f o g with the common factor removed.
CremonaMap compose_cremona(const CremonaMap& f, const CremonaMap& g);

// The three generators and their Cremona transformations.
QuadMat kummer_generator(int k);
CremonaMap kummer_generator_map(int k);
// Composite map psi_{M_w1} o psi_{M_w2} o ... for a word of generator indices.
CremonaMap word_map(const std::vector<int>& word);
QuadMat word_matrix(const std::vector<int>& word);

// Word over {1, 2, 3} whose product equals M.
std::vector<int> semigroup_decompose(const QuadMat& M);

} // namespace sd
