#pragma once

#include "surfdef/hmap.hpp"
#include "surfdef/mpoly.hpp"
#include "surfdef/series.hpp"
#include "surfdef/tower.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace sd {

class MalformedSection : public MathError {
public:
    using MathError::MathError;
};

// c1 * d/d(coord1) + c2 * d/d(coord2) on a named chart.
struct MeroVectorField {
    std::string chart = "base";
    std::array<std::string, 2> coords{"y", "z"};
    RatFunc c1, c2;

    bool is_zero() const { return c1.is_zero() && c2.is_zero(); }
    friend bool operator==(const MeroVectorField& a, const MeroVectorField& b) {
        return a.c1 == b.c1 && a.c2 == b.c2 && a.coords == b.coords;
    }
    std::string to_string() const;
};

// f(v0 -> w0, v1 -> w1) simultaneously.
RatFunc substitute_pair(const RatFunc& f, const std::array<Var, 2>& vars, const std::array<RatFunc, 2>& values);

// Affine form of a birational map on the chart x = 1, as rational functions of y, z.
std::array<RatFunc, 2> affine_forward(const BirationalMap<Rational>& h);
std::array<RatFunc, 2> affine_inverse(const BirationalMap<Rational>& h);

// g_* Z for a map of the (y, z) chart given with its inverse. Throws InvalidMapPair
// when g o g_inv is not the identity.
MeroVectorField pushforward(const MeroVectorField& z, const std::array<RatFunc, 2>& g,
                            const std::array<RatFunc, 2>& g_inv);
MeroVectorField pushforward(const MeroVectorField& z, const BirationalMap<Rational>& h);

// Chain rule transform of a field in chart (x, y) to the blowup chart (u, v).
MeroVectorField blowup_transform(const MeroVectorField& z, BlowupRule rule, const Rational& cx, const Rational& cy,
                                 const std::array<std::string, 2>& new_coords);

// Rewrites a field given on one chart of the tower in the coordinates of another chart.
MeroVectorField transport(const BlowupTower& tower, const MeroVectorField& z, const std::string& to_chart);

// d/d(coordinate idx) of a chart, as a field on that chart.
MeroVectorField chart_field(const BlowupTower& tower, std::size_t chart, int idx);

// ---- evaluation of fields on series ----

// A field as used by the numeric engine: zero, a coordinate field of a tower chart,
// or a rational field on the (y, z) chart.
struct FieldSource {
    enum class Kind { Zero, Chart, Base };
    Kind kind = Kind::Zero;
    const BlowupTower* tower = nullptr;
    std::size_t chart = 0;
    int idx = 0;
    RatFunc fy, fz;

    static FieldSource zero() { return {}; }
    static FieldSource chart_coordinate(const BlowupTower& t, std::size_t chart, int idx) {
        FieldSource f;
        f.kind = Kind::Chart;
        f.tower = &t;
        f.chart = chart;
        f.idx = idx;
        return f;
    }
    static FieldSource base(const RatFunc& fy, const RatFunc& fz) {
        FieldSource f;
        f.kind = Kind::Base;
        f.fy = fy;
        f.fz = fz;
        return f;
    }
    static FieldSource base(const MeroVectorField& z);
    bool is_zero() const { return kind == Kind::Zero; }
    // the same field on the (y, z) chart
    MeroVectorField to_mero() const;
};

template <class T>
T eval_mpoly_yz(const MPoly& p, const T& y, const T& z) {
    static const Var vy = var("y"), vz = var("z");
    std::vector<T> py{T(1)}, pz{T(1)};
    T r(0);
    for (const auto& t : p.terms()) {
        unsigned ey = t.m.exp(vy), ez = t.m.exp(vz);
        if (t.m.total_degree() != ey + ez) throw MathError("field depends on variables other than y, z");
        while (py.size() <= ey) py.push_back(py.back() * y);
        while (pz.size() <= ez) pz.push_back(pz.back() * z);
        r += T(t.c) * py[ey] * pz[ez];
    }
    return r;
}

template <class T>
T eval_ratfunc_yz(const RatFunc& f, const T& y, const T& z) {
    if (f.is_zero()) return T(0);
    T n = eval_mpoly_yz(f.num(), y, z);
    if (f.den().is_constant()) return n * T(Rational(Rational(1) / f.den().constant_value()));
    return n / eval_mpoly_yz(f.den(), y, z);
}

// Components (d/dy, d/dz) of the field at the base point (y, z).
template <class T>
std::array<T, 2> field_at(const FieldSource& f, const T& y, const T& z) {
    switch (f.kind) {
    case FieldSource::Kind::Zero:
        return {T(0), T(0)};
    case FieldSource::Kind::Base:
        return {eval_ratfunc_yz(f.fy, y, z), eval_ratfunc_yz(f.fz, y, z)};
    case FieldSource::Kind::Chart: {
        auto ab = f.tower->from_base(f.chart, y, z);
        auto J = f.tower->to_base(f.chart, ab[0], ab[1]).second;
        return {J[0][f.idx], J[1][f.idx]};
    }
    }
    return {T(0), T(0)};
}

// (h_* f) at the base point q = (y, z); h == nullptr means the identity.
template <class T>
std::array<T, 2> pushed_field_at(const BirationalMap<Rational>* h, const FieldSource& f, const T& y, const T& z) {
    if (!h) return field_at(f, y, z);
    auto p = h->apply_inverse(y, z);
    auto w = field_at(f, p[0], p[1]);
    auto J = h->jacobian(p[0], p[1]);
    return {J[0][0] * w[0] + J[0][1] * w[1], J[1][0] * w[0] + J[1][1] * w[1]};
}

// Residue (b10, b11) of h_* f along the exceptional divisor `divisor` (step index) of
// the tower, read at the generic point with along-coordinate `lambda`.
template <class S>
std::array<S, 2> residue_once(const BirationalMap<Rational>* h, const FieldSource& f, const BlowupTower& tower,
                              std::size_t divisor, const S& lambda) {
    using Ser = Series<S>;
    const BlowupStep& st = tower.step(divisor);
    std::array<Ser, 2> ab;
    ab[st.divisor_coord()] = Ser::U();
    ab[st.along_coord()] = Ser(Dual<S>(lambda, S(1)));
    auto [pt, J] = tower.to_base(divisor + 1, ab[0], ab[1]);
    auto w = pushed_field_at(h, f, pt[0], pt[1]);
    Ser det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
    Ser di = det.inverse();
    // inverse Jacobian applied to w, along component only
    Ser comp = st.along_coord() == 0 ? (J[1][1] * w[0] - J[0][1] * w[1]) * di : (J[0][0] * w[1] - J[1][0] * w[0]) * di;
    auto c = comp.coeff(-1);
    return {c.a, c.b};
}

// Same, retrying at increasing working precision.
template <class S>
std::array<S, 2> residue(const BirationalMap<Rational>* h, const FieldSource& f, const BlowupTower& tower,
                         std::size_t divisor, const S& lambda) {
    if (f.is_zero()) return {S(0), S(0)};
    int& wp = Series<S>::work_precision();
    int saved = wp;
    for (int prec : {30, 50, 80, 140}) {
        wp = prec;
        try {
            auto r = residue_once(h, f, tower, divisor, lambda);
            wp = saved;
            return r;
        } catch (const PrecisionExhausted&) {
        } catch (...) {
            wp = saved;
            throw;
        }
    }
    wp = saved;
    throw MathError("residue: precision budget exhausted");
}

// Pole order of h_* f along the exceptional divisor (maximum over both components), at a generic point.
template <class S>
int pole_order(const BirationalMap<Rational>* h, const FieldSource& f, const BlowupTower& tower, std::size_t divisor,
               const S& lambda) {
    using Ser = Series<S>;
    if (f.is_zero()) return 0;
    int& wp = Series<S>::work_precision();
    int saved = wp;
    wp = 40;
    const BlowupStep& st = tower.step(divisor);
    std::array<Ser, 2> ab;
    ab[st.divisor_coord()] = Ser::U();
    ab[st.along_coord()] = Ser(Dual<S>(lambda, S(1)));
    auto [pt, J] = tower.to_base(divisor + 1, ab[0], ab[1]);
    auto w = pushed_field_at(h, f, pt[0], pt[1]);
    Ser di = (J[0][0] * J[1][1] - J[0][1] * J[1][0]).inverse();
    Ser c0 = (J[1][1] * w[0] - J[0][1] * w[1]) * di;
    Ser c1 = (J[0][0] * w[1] - J[1][0] * w[0]) * di;
    wp = saved;
    int v = std::min(c0.is_zero() ? 0 : c0.valuation(), c1.is_zero() ? 0 : c1.valuation());
    return v < 0 ? -v : 0;
}

// The seven Taylor components of h_* f at (0, 0):
// Fy, dFy/dy, dFy/dz, Fz, dFz/dy, dFz/dz, (1/2) d^2Fz/dy^2.
template <class S>
std::array<S, 7> taylor7(const BirationalMap<Rational>* h, const FieldSource& f) {
    using Ser = Series<S>;
    int& wp = Series<S>::work_precision();
    int saved = wp;
    wp = 12;
    auto wy = pushed_field_at(h, f, Ser::U(), Ser(0));
    auto wz = pushed_field_at(h, f, Ser(0), Ser::U());
    wp = saved;
    return {wy[0].coeff(0).a, wy[0].coeff(1).a, wz[0].coeff(1).a, wy[1].coeff(0).a,
            wy[1].coeff(1).a, wz[1].coeff(1).a, wy[1].coeff(2).a};
}

// The polynomial fields dual to taylor7: d/dy, y d/dy, z d/dy, d/dz, y d/dz, z d/dz, y^2 d/dz.
std::vector<FieldSource> taylor_fields();

// ---- W-sections ----

// A section of W(D) over the chain cover U_0..U_{N-1} (U_i = domain of chart i, the last
// one also covering chart N), either as one field per open set or as coordinates over the
// algebraic basis (residue pairs per exceptional divisor, then base coefficients).
struct WSection {
    std::vector<FieldSource> pieces;
    std::vector<Rational> coords;
    bool algebraic = false;
};

// Open set whose piece is read at the generic point of the divisor with the given step index.
std::size_t open_for_divisor(const BlowupTower& tower, std::size_t divisor);

// Basis of W(D_P): element (j, idx) is d/d(coord idx) of chart j on U_j..U_{N-1}, zero before.
std::vector<WSection> geometric_basis(const BlowupTower& tower);

// Residue pairs along every exceptional divisor, with generic along-coordinates lambda.
template <class S>
std::vector<S> to_algebraic(const WSection& s, const BlowupTower& tower, const std::vector<S>& lambda) {
    if (s.algebraic) {
        std::vector<S> out;
        for (const auto& c : s.coords) out.push_back(S(c));
        return out;
    }
    std::vector<S> out;
    for (std::size_t d = 0; d < tower.length(); ++d) {
        auto r = s.pieces.empty() ? std::array<S, 2>{S(0), S(0)}
                                  : residue<S>(nullptr, s.pieces.at(open_for_divisor(tower, d)), tower, d, lambda.at(d));
        out.push_back(r[0]);
        out.push_back(r[1]);
    }
    return out;
}

struct VBasis {
    int m = 0;
    std::vector<MeroVectorField> a, b, c, d;
    std::vector<MeroVectorField> all() const;
    std::size_t size() const { return a.size() + b.size() + c.size() + d.size(); }
};

// Fields of H^0(P^2, TP^2(m Delta)) in the (y, z) chart, Delta = {z = 0}.
VBasis v_basis(int m);

// Pole order along z = 0 of a field on the (y, z) chart.
int pole_order_along_delta(const MeroVectorField& z);

// Coordinates of the polar part along z = 0 on the type B, C, D fields of v_basis(m)
// (order: b_{p,q}, c_{p,q}, d_p). Throws MalformedSection when the polar part is not
// in their span.
std::vector<Rational> base_coordinates(const MeroVectorField& z, int m);

// True iff W(D) -> W(D') is onto, with D' = D_P (the standard divisor of the tower).
// Tested on the geometric basis of W(D'): every piece must have pole order <= D along
// the divisors read on its open set.
bool is_one_exceptional(const BlowupTower& tower, const TowerDivisor& d, const TowerDivisor& d_prime,
                        unsigned long seed = 1);

} // namespace sd
