#include "surfdef/numberfield.hpp"

namespace sd {

namespace {
const std::shared_ptr<const NumberFieldCtx>& pick(const NFElem& a, const NFElem& b) {
    if (a.ctx() && b.ctx() && a.ctx() != b.ctx() && a.ctx()->modulus != b.ctx()->modulus)
        throw MathError("number field mismatch");
    return a.ctx() ? a.ctx() : b.ctx();
}

unsigned euler_phi(unsigned n) {
    unsigned r = n;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        r -= r / p;
    }
    if (n > 1) r -= r / n;
    return r;
}
} // namespace

std::shared_ptr<const NumberFieldCtx> make_number_field(const QPoly& modulus, std::string var) {
    if (modulus.degree() < 1) throw MathError("number field modulus must have positive degree");
    return std::make_shared<const NumberFieldCtx>(NumberFieldCtx{modulus.monic(), std::move(var)});
}

NFElem::NFElem(std::shared_ptr<const NumberFieldCtx> ctx, const QPoly& rep) : ctx_(std::move(ctx)) {
    p_ = ctx_ ? rep % ctx_->modulus : rep;
    if (!ctx_ && p_.degree() > 0) throw MathError("non-constant element without a field");
}

NFElem NFElem::generator(std::shared_ptr<const NumberFieldCtx> ctx) { return NFElem(std::move(ctx), QPoly::x()); }

NFElem NFElem::inverse() const {
    if (is_zero()) throw MathError("inverse of zero in number field");
    if (!ctx_ || p_.degree() == 0) return NFElem(ctx_, QPoly(Rational(1) / p_.coeff(0)));
    auto g = xgcd(p_, ctx_->modulus);
    if (g.g.degree() != 0) throw MathError("number field modulus is reducible");
    return NFElem(ctx_, g.s);
}

NFElem NFElem::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    NFElem r(1), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

NFElem operator+(const NFElem& a, const NFElem& b) { return NFElem(pick(a, b), a.p_ + b.p_); }
NFElem operator-(const NFElem& a, const NFElem& b) { return NFElem(pick(a, b), a.p_ - b.p_); }
NFElem operator*(const NFElem& a, const NFElem& b) { return NFElem(pick(a, b), a.p_ * b.p_); }

std::string NFElem::to_string() const { return p_.to_string(ctx_ ? ctx_->var : "t"); }

std::optional<unsigned> is_root_of_unity(const NFElem& z) {
    if (z.is_zero()) throw MathError("is_root_of_unity of zero");
    unsigned deg = z.ctx() ? static_cast<unsigned>(z.ctx()->modulus.degree()) : 1;
    // phi(d) >= sqrt(d/2), so d <= 2 deg^2 covers every admissible order
    for (unsigned d = 1; d <= 2 * deg * deg + 2; ++d) {
        if (euler_phi(d) > deg) continue;
        if (z.pow(d) == NFElem(1)) return d;
    }
    return std::nullopt;
}

} // namespace sd
