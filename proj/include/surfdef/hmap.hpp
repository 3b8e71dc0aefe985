#pragma once

#include "surfdef/matrix.hpp"
#include "surfdef/mpoly.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace sd {

class InvalidMapPair : public MathError {
public:
    using MathError::MathError;
};

// Homogeneous polynomial in (x, y, z) with coefficients in S.
template <class S>
class HPoly {
public:
    using Exp = std::array<unsigned, 3>;

    HPoly() = default;
    static HPoly coordinate(int i) {
        HPoly p;
        Exp e{0, 0, 0};
        e[i] = 1;
        p.t_[e] = S(1);
        return p;
    }
    static HPoly constant(const S& c) {
        HPoly p;
        if (!is_zero(c)) p.t_[{0, 0, 0}] = c;
        return p;
    }

    const std::map<Exp, S>& terms() const { return t_; }
    bool is_zero_poly() const { return t_.empty(); }
    unsigned degree() const { return t_.empty() ? 0 : t_.begin()->first[0] + t_.begin()->first[1] + t_.begin()->first[2]; }

    void add_term(const Exp& e, const S& c) {
        auto it = t_.find(e);
        if (it == t_.end()) {
            if (!is_zero(c)) t_.emplace(e, c);
            return;
        }
        it->second += c;
        if (is_zero(it->second)) t_.erase(it);
    }

    friend HPoly operator+(const HPoly& a, const HPoly& b) {
        HPoly r = a;
        for (const auto& [e, c] : b.t_) r.add_term(e, c);
        return r;
    }
    friend HPoly operator-(const HPoly& a, const HPoly& b) {
        HPoly r = a;
        for (const auto& [e, c] : b.t_) r.add_term(e, -c);
        return r;
    }
    friend HPoly operator*(const HPoly& a, const HPoly& b) {
        HPoly r;
        for (const auto& [ea, ca] : a.t_)
            for (const auto& [eb, cb] : b.t_) r.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
        return r;
    }
    HPoly scaled(const S& s) const {
        HPoly r;
        for (const auto& [e, c] : t_) r.add_term(e, c * s);
        return r;
    }
    HPoly pow(unsigned n) const {
        HPoly r = constant(S(1)), b = *this;
        while (n) {
            if (n & 1) r = r * b;
            n >>= 1;
            if (n) b = b * b;
        }
        return r;
    }
    friend bool operator==(const HPoly& a, const HPoly& b) {
        if (a.t_.size() != b.t_.size()) return false;
        auto i = a.t_.begin();
        auto j = b.t_.begin();
        for (; i != a.t_.end(); ++i, ++j)
            if (i->first != j->first || !(i->second == j->second)) return false;
        return true;
    }

    // p(q0, q1, q2)
    HPoly compose(const std::array<HPoly, 3>& q) const {
        std::array<std::vector<HPoly>, 3> pw;
        HPoly r;
        for (const auto& [e, c] : t_) {
            HPoly m = constant(c);
            for (int i = 0; i < 3; ++i) {
                auto& cache = pw[i];
                if (cache.empty()) cache.push_back(constant(S(1)));
                while (cache.size() <= e[i]) cache.push_back(cache.back() * q[i]);
                m = m * cache[e[i]];
            }
            r = r + m;
        }
        return r;
    }

    HPoly derivative(int i) const {
        HPoly r;
        for (const auto& [e, c] : t_) {
            if (e[i] == 0) continue;
            Exp f = e;
            f[i] -= 1;
            r.add_term(f, c * S(int(e[i])));
        }
        return r;
    }

    // Value at (1, y, z) for any ring T that accepts S constants.
    template <class T>
    T eval_affine(const T& y, const T& z) const {
        std::vector<T> py{T(1)}, pz{T(1)};
        T r(0);
        for (const auto& [e, c] : t_) {
            while (py.size() <= e[1]) py.push_back(py.back() * y);
            while (pz.size() <= e[2]) pz.push_back(pz.back() * z);
            r += T(c) * py[e[1]] * pz[e[2]];
        }
        return r;
    }

private:
    std::map<Exp, S> t_;
};

// Birational self-map of P^2 given by a forward triple and an explicit inverse triple.
template <class S>
class BirationalMap {
public:
    using H = HPoly<S>;
    using Triple = std::array<H, 3>;

    BirationalMap() : BirationalMap(identity_triple(), identity_triple()) {}
    BirationalMap(Triple fwd, Triple inv) : f_(std::move(fwd)), g_(std::move(inv)) {
        for (int r = 0; r < 3; ++r)
            for (int c = 1; c < 3; ++c) df_[r][c - 1] = f_[r].derivative(c);
    }

    static Triple identity_triple() { return {H::coordinate(0), H::coordinate(1), H::coordinate(2)}; }
    static BirationalMap identity() { return BirationalMap(); }
    static BirationalMap linear(const Matrix<S>& a, const Matrix<S>& a_inv) {
        return BirationalMap(linear_triple(a), linear_triple(a_inv));
    }
    static Triple linear_triple(const Matrix<S>& a) {
        Triple t;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) t[r] = t[r] + H::coordinate(c).scaled(a(r, c));
        return t;
    }

    const Triple& forward() const { return f_; }
    const Triple& backward() const { return g_; }
    BirationalMap inverse() const { return BirationalMap(g_, f_); }

    // (this o other)
    BirationalMap after(const BirationalMap& other) const {
        return BirationalMap(compose_triples(f_, other.f_), compose_triples(other.g_, g_));
    }

    static Triple compose_triples(const Triple& outer, const Triple& inner) {
        return {outer[0].compose(inner), outer[1].compose(inner), outer[2].compose(inner)};
    }

    // forward o backward must be proportional to the identity.
    bool is_valid_pair() const {
        auto check = [](const Triple& a, const Triple& b) {
            Triple c = compose_triples(a, b);
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j)
                    if (!(c[i] * H::coordinate(j) == c[j] * H::coordinate(i))) return false;
            return !(c[0].is_zero_poly() && c[1].is_zero_poly() && c[2].is_zero_poly());
        };
        return check(f_, g_) && check(g_, f_);
    }
    void require_valid() const {
        if (!is_valid_pair()) throw InvalidMapPair("forward and inverse triples do not compose to the identity");
    }

    // Affine images on the chart x = 1.
    template <class T>
    std::array<T, 2> apply(const T& y, const T& z) const {
        return affine(f_, y, z);
    }
    template <class T>
    std::array<T, 2> apply_inverse(const T& y, const T& z) const {
        return affine(g_, y, z);
    }

    // Jacobian of the affine forward map at (y, z).
    template <class T>
    std::array<std::array<T, 2>, 2> jacobian(const T& y, const T& z) const {
        T F[3], dF[3][2];
        for (int r = 0; r < 3; ++r) {
            F[r] = f_[r].eval_affine(y, z);
            for (int c = 0; c < 2; ++c) dF[r][c] = df_[r][c].eval_affine(y, z);
        }
        T inv0 = T(1) / F[0];
        T inv2 = inv0 * inv0;
        std::array<std::array<T, 2>, 2> J;
        for (int r = 1; r < 3; ++r)
            for (int c = 0; c < 2; ++c) J[r - 1][c] = (dF[r][c] * F[0] - F[r] * dF[0][c]) * inv2;
        return J;
    }

private:
    template <class T>
    static std::array<T, 2> affine(const Triple& t, const T& y, const T& z) {
        T d = T(1) / t[0].eval_affine(y, z);
        return {t[1].eval_affine(y, z) * d, t[2].eval_affine(y, z) * d};
    }

    Triple f_, g_;
    std::array<std::array<H, 2>, 3> df_;
};

// Homogeneous triple from polynomial expressions in x, y, z with rational coefficients.
HPoly<Rational> hpoly_from_mpoly(const MPoly& p);
std::array<HPoly<Rational>, 3> parse_triple(const std::array<std::string, 3>& exprs);

} // namespace sd
