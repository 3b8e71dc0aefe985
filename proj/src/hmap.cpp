#include "surfdef/hmap.hpp"

namespace sd {

HPoly<Rational> hpoly_from_mpoly(const MPoly& p) {
    static const Var vx = var("x"), vy = var("y"), vz = var("z");
    HPoly<Rational> h;
    int deg = -1;
    for (const auto& t : p.terms()) {
        unsigned ex = t.m.exp(vx), ey = t.m.exp(vy), ez = t.m.exp(vz);
        if (t.m.total_degree() != ex + ey + ez) throw MathError("homogeneous map component uses variables other than x, y, z");
        int d = int(ex + ey + ez);
        if (deg >= 0 && d != deg) throw MathError("map component is not homogeneous");
        deg = d;
        h.add_term({ex, ey, ez}, t.c);
    }
    return h;
}

std::array<HPoly<Rational>, 3> parse_triple(const std::array<std::string, 3>& exprs) {
    std::array<HPoly<Rational>, 3> t;
    int deg = -1;
    for (int i = 0; i < 3; ++i) {
        t[i] = hpoly_from_mpoly(parse_mpoly(exprs[i]));
        if (t[i].is_zero_poly()) continue;
        if (deg >= 0 && int(t[i].degree()) != deg) throw MathError("map components have different degrees");
        deg = int(t[i].degree());
    }
    return t;
}

} // namespace sd
