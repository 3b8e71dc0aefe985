#include "surfdef/vecfield.hpp"

#include <random>
#include <set>

namespace sd {

std::string MeroVectorField::to_string() const {
    return "(" + c1.to_string() + ")*d" + coords[0] + " + (" + c2.to_string() + ")*d" + coords[1];
}

RatFunc substitute_pair(const RatFunc& f, const std::array<Var, 2>& vars, const std::array<RatFunc, 2>& values) {
    static const Var t0 = var("__sub0"), t1 = var("__sub1");
    RatFunc g = f.substitute(vars[0], RatFunc(MPoly::variable(t0)));
    g = g.substitute(vars[1], RatFunc(MPoly::variable(t1)));
    g = g.substitute(t0, values[0]);
    return g.substitute(t1, values[1]);
}

namespace {

RatFunc hpoly_to_ratfunc(const HPoly<Rational>& p) {
    RatFunc y = RatFunc::variable("y"), z = RatFunc::variable("z");
    return p.eval_affine(y, z);
}

std::array<RatFunc, 2> affine_of(const std::array<HPoly<Rational>, 3>& t) {
    RatFunc d = hpoly_to_ratfunc(t[0]);
    return {hpoly_to_ratfunc(t[1]) / d, hpoly_to_ratfunc(t[2]) / d};
}

} // namespace

std::array<RatFunc, 2> affine_forward(const BirationalMap<Rational>& h) { return affine_of(h.forward()); }
std::array<RatFunc, 2> affine_inverse(const BirationalMap<Rational>& h) { return affine_of(h.backward()); }

MeroVectorField pushforward(const MeroVectorField& z, const std::array<RatFunc, 2>& g,
                            const std::array<RatFunc, 2>& g_inv) {
    Var vy = var(z.coords[0]), vz = var(z.coords[1]);
    std::array<Var, 2> vs{vy, vz};
    RatFunc y = RatFunc(MPoly::variable(vy)), zz = RatFunc(MPoly::variable(vz));
    if (substitute_pair(g[0], vs, g_inv) != y || substitute_pair(g[1], vs, g_inv) != zz)
        throw InvalidMapPair("map and inverse do not compose to the identity");
    RatFunc w1 = g[0].derivative(vy) * z.c1 + g[0].derivative(vz) * z.c2;
    RatFunc w2 = g[1].derivative(vy) * z.c1 + g[1].derivative(vz) * z.c2;
    MeroVectorField out = z;
    out.c1 = substitute_pair(w1, vs, g_inv);
    out.c2 = substitute_pair(w2, vs, g_inv);
    return out;
}

MeroVectorField pushforward(const MeroVectorField& z, const BirationalMap<Rational>& h) {
    if (z.coords != std::array<std::string, 2>{"y", "z"}) throw MathError("pushforward expects a field on the (y, z) chart");
    return pushforward(z, affine_forward(h), affine_inverse(h));
}

MeroVectorField blowup_transform(const MeroVectorField& z, BlowupRule rule, const Rational& cx, const Rational& cy,
                                 const std::array<std::string, 2>& new_coords) {
    Var vx = var(z.coords[0]), vy = var(z.coords[1]);
    RatFunc u = RatFunc::variable(new_coords[0]), v = RatFunc::variable(new_coords[1]);
    std::array<RatFunc, 2> old_in_new;
    RatFunc cu, cv;
    if (rule == BlowupRule::X) {
        // u = x - a, v = (y - b)/(x - a)
        old_in_new = {u + RatFunc(cx), u * v + RatFunc(cy)};
        RatFunc zx = substitute_pair(z.c1, {vx, vy}, old_in_new);
        RatFunc zy = substitute_pair(z.c2, {vx, vy}, old_in_new);
        cu = zx;
        cv = (zy - v * zx) / u;
    } else {
        // v = y - b, u = (x - a)/(y - b)
        old_in_new = {u * v + RatFunc(cx), v + RatFunc(cy)};
        RatFunc zx = substitute_pair(z.c1, {vx, vy}, old_in_new);
        RatFunc zy = substitute_pair(z.c2, {vx, vy}, old_in_new);
        cv = zy;
        cu = (zx - u * zy) / v;
    }
    MeroVectorField out;
    out.coords = new_coords;
    out.c1 = cu;
    out.c2 = cv;
    return out;
}

MeroVectorField transport(const BlowupTower& tower, const MeroVectorField& z, const std::string& to_chart) {
    std::size_t ti = tower.chart_index(to_chart);
    auto from_names = z.coords;
    auto to_names = tower.chart_coords(ti);
    std::array<Var, 2> fv{var(from_names[0]), var(from_names[1])};
    // target coordinates as functions of source coordinates, and the reverse
    auto fwd = chart_transition(tower, to_chart, z.chart);
    auto back = chart_transition(tower, z.chart, to_chart);
    RatFunc w1 = fwd[0].derivative(fv[0]) * z.c1 + fwd[0].derivative(fv[1]) * z.c2;
    RatFunc w2 = fwd[1].derivative(fv[0]) * z.c1 + fwd[1].derivative(fv[1]) * z.c2;
    MeroVectorField out;
    out.chart = to_chart;
    out.coords = to_names;
    out.c1 = substitute_pair(w1, fv, back);
    out.c2 = substitute_pair(w2, fv, back);
    return out;
}

MeroVectorField chart_field(const BlowupTower& tower, std::size_t chart, int idx) {
    MeroVectorField f;
    f.chart = tower.chart_name(chart);
    f.coords = tower.chart_coords(chart);
    f.c1 = RatFunc(idx == 0 ? 1 : 0);
    f.c2 = RatFunc(idx == 1 ? 1 : 0);
    return f;
}

FieldSource FieldSource::base(const MeroVectorField& z) {
    if (z.coords != std::array<std::string, 2>{"y", "z"}) throw MathError("expected a field on the (y, z) chart");
    return base(z.c1, z.c2);
}

MeroVectorField FieldSource::to_mero() const {
    MeroVectorField m;
    switch (kind) {
    case Kind::Zero:
        return m;
    case Kind::Base:
        m.c1 = fy;
        m.c2 = fz;
        return m;
    case Kind::Chart: {
        MeroVectorField c = chart_field(*tower, chart, idx);
        MeroVectorField t = transport(*tower, c, "base");
        t.chart = "base";
        return t;
    }
    }
    return m;
}

std::vector<FieldSource> taylor_fields() {
    RatFunc y = RatFunc::variable("y"), z = RatFunc::variable("z");
    return {FieldSource::base(1, 0), FieldSource::base(y, 0),     FieldSource::base(z, 0),
            FieldSource::base(0, 1), FieldSource::base(0, y),     FieldSource::base(0, z),
            FieldSource::base(0, y * y)};
}

std::size_t open_for_divisor(const BlowupTower& tower, std::size_t divisor) {
    return std::min(divisor + 1, tower.length() - 1);
}

std::vector<WSection> geometric_basis(const BlowupTower& tower) {
    if (!tower.is_chain()) throw MathError("geometric basis needs a chain of infinitely near points");
    std::size_t n = tower.length();
    std::vector<WSection> out;
    for (std::size_t j = 0; j < n; ++j)
        for (int idx = 0; idx < 2; ++idx) {
            WSection s;
            for (std::size_t i = 0; i < n; ++i)
                s.pieces.push_back(i >= j ? FieldSource::chart_coordinate(tower, j, idx) : FieldSource::zero());
            out.push_back(std::move(s));
        }
    return out;
}

std::vector<MeroVectorField> VBasis::all() const {
    std::vector<MeroVectorField> v = a;
    v.insert(v.end(), b.begin(), b.end());
    v.insert(v.end(), c.begin(), c.end());
    v.insert(v.end(), d.begin(), d.end());
    return v;
}

VBasis v_basis(int m) {
    if (m < 0) throw MathError("pole order must be nonnegative");
    RatFunc y = RatFunc::variable("y"), z = RatFunc::variable("z");
    auto fld = [](RatFunc a, RatFunc b) {
        MeroVectorField f;
        f.c1 = std::move(a);
        f.c2 = std::move(b);
        return f;
    };
    VBasis vb;
    vb.m = m;
    vb.a = {fld(1, 0),     fld(y, 0),     fld(z, 0),         fld(0, 1),
            fld(0, y),     fld(0, z),     fld(y * y, y * z), fld(y * z, z * z)};
    for (int q = 1; q <= m; ++q)
        for (int p = 0; p <= q + 1; ++p) vb.b.push_back(fld(y.pow(p) / z.pow(q), 0));
    for (int q = 1; q <= m; ++q)
        for (int p = 0; p <= q + 1; ++p) vb.c.push_back(fld(0, y.pow(p) / z.pow(q)));
    for (int p = 1; p <= m; ++p) vb.d.push_back(fld(y.pow(p + 2) / z.pow(p), y.pow(p + 1) / z.pow(p - 1)));
    return vb;
}

namespace {

int z_order(const RatFunc& f) {
    if (f.is_zero()) return 0;
    Var vz = var("z");
    auto n = f.num().coeffs_in(vz);
    auto d = f.den().coeffs_in(vz);
    int vn = 0, vd = 0;
    while (n[vn].is_zero()) ++vn;
    while (d[vd].is_zero()) ++vd;
    return vn - vd;
}

// coefficient of y^p in a polynomial in y
Rational y_coeff(const RatFunc& f, unsigned p) {
    if (f.is_zero()) return 0;
    if (!f.is_polynomial()) throw MalformedSection("polar coefficient is not polynomial in y");
    Var vy = var("y");
    auto c = f.num().coeffs_in(vy);
    for (const auto& x : c)
        if (!x.is_constant()) throw MalformedSection("polar coefficient depends on other variables");
    Rational s = Rational(1) / f.den().constant_value();
    return p < c.size() ? c[p].constant_value() * s : Rational(0);
}

unsigned y_degree(const RatFunc& f) {
    if (f.is_zero()) return 0;
    return f.num().degree(var("y"));
}

} // namespace

int pole_order_along_delta(const MeroVectorField& z) {
    int o = std::min(z.c1.is_zero() ? 0 : z_order(z.c1), z.c2.is_zero() ? 0 : z_order(z.c2));
    return o < 0 ? -o : 0;
}

std::vector<Rational> base_coordinates(const MeroVectorField& f, int m) {
    if (pole_order_along_delta(f) > m) throw MalformedSection("pole order along Delta exceeds the budget");
    Var vz = var("z");
    RatFunc zero(0);
    std::vector<RatFunc> P, Q;
    if (m > 0) {
        P = f.c1.is_zero() ? std::vector<RatFunc>(m) : laurent_coeffs(f.c1, vz, zero, -m, -1);
        Q = f.c2.is_zero() ? std::vector<RatFunc>(m) : laurent_coeffs(f.c2, vz, zero, -m, -1);
    }
    // P[m - q] is the coefficient of z^{-q}
    auto pc = [&](int q) -> const RatFunc& { return P[m - q]; };
    auto qc = [&](int q) -> const RatFunc& { return Q[m - q]; };
    std::vector<Rational> bco, cco, dco(m);
    // d_p contributes y^{p+2} z^{-p} to d/dy and y^{p+1} z^{-(p-1)} to d/dz
    for (int p = 1; p <= m; ++p) dco[p - 1] = y_coeff(pc(p), p + 2);
    for (int q = 1; q <= m; ++q) {
        if (y_degree(pc(q)) > unsigned(q + 2)) throw MalformedSection("polar part outside the span of type B/D fields");
        for (int p = 0; p <= q + 1; ++p) bco.push_back(y_coeff(pc(q), p));
    }
    for (int q = 1; q <= m; ++q) {
        RatFunc rest = qc(q);
        if (q + 1 <= m) rest = rest - RatFunc(dco[q]) * RatFunc::variable("y").pow(q + 2);
        if (y_degree(rest) > unsigned(q + 1)) throw MalformedSection("polar part outside the span of type C/D fields");
        for (int p = 0; p <= q + 1; ++p) cco.push_back(y_coeff(rest, p));
    }
    std::vector<Rational> out = bco;
    out.insert(out.end(), cco.begin(), cco.end());
    out.insert(out.end(), dco.begin(), dco.end());
    return out;
}

bool is_one_exceptional(const BlowupTower& tower, const TowerDivisor& d, const TowerDivisor& d_prime,
                        unsigned long seed) {
    if (!divisor_leq(d, d_prime)) throw MathError("is_one_exceptional expects D <= D'");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(2, 97);
    std::set<int> used;
    std::vector<Rational> lam;
    while (lam.size() < tower.length()) {
        int x = dist(rng);
        if (used.insert(x).second) lam.emplace_back(x, 7);
    }
    for (const auto& s : geometric_basis(tower)) {
        for (std::size_t div = 0; div < tower.length(); ++div) {
            const FieldSource& piece = s.pieces[open_for_divisor(tower, div)];
            int order = pole_order<Rational>(nullptr, piece, tower, div, lam[div]);
            if (order > d.mult(tower.step(div).label)) return false;
        }
    }
    return true;
}

} // namespace sd
