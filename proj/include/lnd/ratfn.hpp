#pragma once

#include <span>
#include <string>

#include "lnd/gcd.hpp"
#include "lnd/poly.hpp"

namespace lnd {

// Reduced rational function: gcd(num, den) is constant and den is monic in
// graded-lex. den = 1 round-trips losslessly to Poly.
class RatFn {
public:
    explicit RatFn(Poly num);          // num / 1
    RatFn(Poly num, Poly den);         // reduces; throws on zero denominator
    static RatFn zero(const VarSetPtr& vs) { return RatFn(Poly(vs)); }
    static RatFn constant(const VarSetPtr& vs, const Rat& c) {
        return RatFn(Poly::constant(vs, c));
    }
    static RatFn variable(const VarSetPtr& vs, std::size_t i) {
        return RatFn(Poly::variable(vs, i));
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const VarSetPtr& varset() const { return num_.varset(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_poly() const { return den_.is_constant(); }
    // The polynomial value; throws when the denominator is not 1.
    const Poly& as_poly() const;

    bool operator==(const RatFn& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFn& o) const { return !(*this == o); }

    RatFn operator-() const;
    RatFn operator+(const RatFn& o) const;
    RatFn operator-(const RatFn& o) const;
    RatFn operator*(const RatFn& o) const;
    RatFn operator/(const RatFn& o) const;  // throws on zero divisor
    RatFn& operator+=(const RatFn& o) { return *this = *this + o; }
    RatFn& operator-=(const RatFn& o) { return *this = *this - o; }
    RatFn& operator*=(const RatFn& o) { return *this = *this * o; }
    RatFn pow(std::uint32_t n) const;

    // d/d(var) by the quotient rule, reduced.
    RatFn derivative(std::size_t var) const;

    // Exact value; throws when the denominator vanishes at the point.
    Rat evaluate(std::span<const Rat> point) const;

    std::string str() const;

private:
    Poly num_, den_;
    void reduce();
};

}  // namespace lnd
