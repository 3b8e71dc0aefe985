#include "surfdef/picard.hpp"

#include "surfdef/cyclotomic.hpp"

#include <set>

namespace sd {

Rational PicLattice::dot(const IntVec& a, const IntVec& b) const {
    if (a.size() != rank() || b.size() != rank()) throw MathError("lattice vector of wrong rank");
    Rational s = 0;
    for (std::size_t i = 0; i < rank(); ++i)
        for (std::size_t j = 0; j < rank(); ++j)
            if (gram(i, j) != 0) s += a[i] * gram(i, j) * b[j];
    return s;
}

IntVec PicLattice::basis_vector(std::size_t i) const {
    IntVec v(rank(), Rational(0));
    v.at(i) = 1;
    return v;
}

std::size_t PicLattice::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return i;
    throw MathError("unknown lattice label " + label);
}

PicLattice blowup_lattice(std::size_t n) {
    PicLattice L;
    L.labels.push_back("H");
    for (std::size_t i = 1; i <= n; ++i) L.labels.push_back("E" + std::to_string(i));
    L.gram = Matrix<Rational>(n + 1, n + 1);
    L.gram(0, 0) = 1;
    for (std::size_t i = 1; i <= n; ++i) L.gram(i, i) = -1;
    L.canonical.assign(n + 1, Rational(1));
    L.canonical[0] = -3;
    return L;
}

IntVec LatticeIsometry::apply(const IntVec& v) const {
    if (v.size() != m.cols()) throw MathError("lattice vector of wrong rank");
    IntVec r(m.rows(), Rational(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v[j];
    return r;
}

bool LatticeIsometry::preserves(const PicLattice& L) const {
    if (m.rows() != L.rank() || m.cols() != L.rank()) return false;
    for (const auto& e : m.data())
        if (e.get_den() != 1) return false;
    if (m.transpose() * L.gram * m != L.gram) return false;
    return apply(L.canonical) == L.canonical;
}

void require_isometry(const PicLattice& L, const LatticeIsometry& g) {
    if (!g.preserves(L)) throw MathError("matrix is not an integral isometry fixing the canonical class");
}

LatticeIsometry blanc_involution(const PicLattice& L, const std::vector<std::size_t>& points) {
    if (points.size() != 5) throw MathError("the involution needs exactly five base points");
    std::set<std::size_t> seen;
    for (auto p : points) {
        if (p == 0 || p >= L.rank()) throw MathError("base point index out of range");
        if (!seen.insert(p).second) throw MathError("label collision among base points");
    }
    std::size_t n = L.rank(), p = points[0];
    auto m = Matrix<Rational>::identity(n);
    auto set_col = [&](std::size_t col, std::vector<std::pair<std::size_t, int>> entries) {
        for (std::size_t i = 0; i < n; ++i) m(i, col) = 0;
        for (auto [i, c] : entries) m(i, col) += c;
    };
    // E_p -> 2H - E_p - E_p1 - ... - E_p4
    set_col(p, {{0, 2}, {p, -1}, {points[1], -1}, {points[2], -1}, {points[3], -1}, {points[4], -1}});
    // E_pi -> H - E_p - E_pi
    for (std::size_t k = 1; k < 5; ++k) set_col(points[k], {{0, 1}, {p, -1}, {points[k], -1}});
    // H -> 3H - 2E_p - E_p1 - ... - E_p4
    set_col(0, {{0, 3}, {p, -2}, {points[1], -1}, {points[2], -1}, {points[3], -1}, {points[4], -1}});
    LatticeIsometry g{m};
    require_isometry(L, g);
    return g;
}

LatticeIsometry halphen_action(const PicLattice& L, const IntVec& alpha, int m) {
    if (m < 1) throw MathError("Halphen index must be positive");
    const IntVec& K = L.canonical;
    if (L.dot(K, K) != 0) throw MathError("Halphen action needs a lattice with K^2 = 0");
    if (L.dot(alpha, K) != 0) throw MathError("alpha is not orthogonal to K");
    Rational a2 = L.dot(alpha, alpha), mm = m;
    std::size_t n = L.rank();
    Matrix<Rational> g(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        IntVec D = L.basis_vector(j);
        Rational dk = L.dot(D, K), da = L.dot(D, alpha);
        Rational kc = mm * da - mm * mm / 2 * dk * a2;
        for (std::size_t i = 0; i < n; ++i) g(i, j) = D[i] - mm * dk * alpha[i] + kc * K[i];
    }
    LatticeIsometry f{g};
    require_isometry(L, f);
    return f;
}

QPoly kummer_pic_charpoly(const std::array<std::array<QuadInt, 2>, 2>& M) {
    QuadInt det = M[0][0] * M[1][1] - M[0][1] * M[1][0];
    if (!det.is_unit()) throw MathError("determinant is not a unit");
    // eigenvalues of conj(M) (x) M are conj(a_i) a_j
    Matrix<Cyc> k(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int r = 0; r < 2; ++r)
                for (int s = 0; s < 2; ++s)
                    k(2 * i + r, 2 * j + s) = Cyc::from_quad(M[i][j]).conj() * Cyc::from_quad(M[r][s]);
    UniPoly<Cyc> q = charpoly(k);
    std::vector<Rational> c;
    for (const auto& a : q.coeffs()) {
        if (!a.is_rational()) throw MathError("Picard characteristic polynomial is not rational");
        c.push_back(a.rational_value());
    }
    QPoly quartic(c);
    for (const auto& a : c)
        if (a.get_den() != 1) throw MathError("Picard characteristic polynomial is not integral");
    return parse_qpoly("(x-1)^9") * quartic;
}

} // namespace sd
