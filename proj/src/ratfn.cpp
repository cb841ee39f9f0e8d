#include "lnd/ratfn.hpp"

#include <stdexcept>

namespace lnd {

RatFn::RatFn(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.varset(), Rat(1))) {}

RatFn::RatFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (!same_varset(num_.varset(), den_.varset()))
        throw std::invalid_argument("RatFn: varset mismatch");
    if (den_.is_zero()) throw std::invalid_argument("division by the zero polynomial");
    reduce();
}

void RatFn::reduce() {
    if (num_.is_zero()) {
        den_ = Poly::constant(num_.varset(), Rat(1));
        return;
    }
    if (!den_.is_constant()) {
        Poly g = poly_gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = *try_divide(num_, g);
            den_ = *try_divide(den_, g);
        }
    }
    Rat lc = den_.leading_coeff();
    if (!rat_is_one(lc)) {
        Rat inv = 1 / lc;
        num_ = num_ * inv;
        den_ = den_ * inv;
    }
}

const Poly& RatFn::as_poly() const {
    if (!is_poly()) throw std::logic_error("RatFn::as_poly: denominator is not 1");
    return num_;
}

RatFn RatFn::operator-() const {
    RatFn r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFn RatFn::operator+(const RatFn& o) const {
    if (den_ == o.den_) return RatFn(num_ + o.num_, den_);
    return RatFn(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFn RatFn::operator-(const RatFn& o) const {
    if (den_ == o.den_) return RatFn(num_ - o.num_, den_);
    return RatFn(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFn RatFn::operator*(const RatFn& o) const {
    return RatFn(num_ * o.num_, den_ * o.den_);
}

RatFn RatFn::operator/(const RatFn& o) const {
    if (o.is_zero()) throw std::invalid_argument("division by the zero polynomial");
    return RatFn(num_ * o.den_, den_ * o.num_);
}

RatFn RatFn::pow(std::uint32_t n) const {
    RatFn r = RatFn::constant(varset(), Rat(1));
    RatFn base = *this;
    while (n > 0) {
        if (n & 1u) r *= base;
        n >>= 1u;
        if (n) base *= base;
    }
    return r;
}

RatFn RatFn::derivative(std::size_t var) const {
    if (is_poly()) return RatFn(num_.derivative(var));
    return RatFn(num_.derivative(var) * den_ - num_ * den_.derivative(var), den_ * den_);
}

Rat RatFn::evaluate(std::span<const Rat> point) const {
    Rat d = den_.evaluate(point);
    if (d == 0) throw std::domain_error("denominator vanishes at point");
    return num_.evaluate(point) / d;
}

namespace {

// A denominator can be printed bare when it is a power of a single variable;
// anything else needs parentheses to survive left-associative '/'.
bool den_is_single_factor(const Poly& p) {
    if (p.term_count() != 1) return false;
    const auto& [e, c] = *p.terms().begin();
    if (!rat_is_one(c)) return false;
    int nonzero = 0;
    for (auto x : e)
        if (x > 0) ++nonzero;
    return nonzero == 1;
}

}  // namespace

std::string RatFn::str() const {
    if (is_poly()) return num_.str();
    std::string ns = num_.term_count() <= 1 ? num_.str() : "(" + num_.str() + ")";
    std::string ds = den_is_single_factor(den_) ? den_.str() : "(" + den_.str() + ")";
    return ns + "/" + ds;
}

}  // namespace lnd
