#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "lnd/rational.hpp"
#include "lnd/varset.hpp"

namespace lnd {

// Exponent vector, one slot per variable of the VarSet (parameters included).
using Expo = std::vector<std::uint32_t>;

inline std::uint64_t expo_total(const Expo& e) {
    std::uint64_t s = 0;
    for (auto x : e) s += x;
    return s;
}

// Graded-lex: compare total degree first, then exponents left to right with
// earlier-declared variables more significant.
int grlex_cmp(const Expo& a, const Expo& b);

// Comparator putting the graded-lex largest monomial first (map iteration
// then yields terms in canonical print order).
struct GrlexDesc {
    bool operator()(const Expo& a, const Expo& b) const { return grlex_cmp(a, b) > 0; }
};

// Degree values; kNegInfDeg stands for the degree of the zero polynomial.
constexpr long kNegInfDeg = std::numeric_limits<long>::min();
std::string degree_str(long d);

// Exact multivariate polynomial over the rationals. Immutable in spirit:
// all operations return new values, stored coefficients are never zero.
class Poly {
public:
    using TermMap = std::map<Expo, Rat, GrlexDesc>;

    explicit Poly(VarSetPtr vs) : vs_(std::move(vs)) {}
    static Poly constant(VarSetPtr vs, const Rat& c);
    static Poly variable(VarSetPtr vs, std::size_t index);
    static Poly monomial(VarSetPtr vs, Expo e, const Rat& c);

    const VarSetPtr& varset() const { return vs_; }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Value of a constant polynomial (0 for the zero polynomial).
    Rat constant_value() const;

    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly operator*(const Rat& c) const;
    Poly pow(std::uint32_t n) const;

    long total_degree() const;  // kNegInfDeg for 0
    // Max over terms of the weight-weighted exponent sum; weights indexed by
    // variable. kNegInfDeg for 0.
    long weighted_degree(std::span<const long> weights) const;
    std::uint32_t degree_in(std::size_t var) const;
    bool depends_on(std::size_t var) const;

    // Leading term in graded-lex order; polynomial must be nonzero.
    const Expo& leading_expo() const;
    const Rat& leading_coeff() const;
    // Scaled so the graded-lex leading coefficient is 1 (zero stays zero).
    Poly monic() const;

    Poly derivative(std::size_t var) const;

    // Exact value at a point assigning every variable of the varset.
    Rat evaluate(std::span<const Rat> point) const;
    // Substitutes images[i] for variable i; images must share a varset.
    Poly substitute(std::span<const Poly> images) const;

    // Canonical string per the expression grammar: descending graded-lex
    // terms, reduced coefficients, '*' between factors, '^' for powers >= 2.
    std::string str() const;

    // Internal builder: inserts c * x^e, dropping the term if it cancels.
    void add_term(const Expo& e, const Rat& c);

private:
    VarSetPtr vs_;
    TermMap terms_;
};

Poly operator*(const Rat& c, const Poly& p);

// Renders one monomial (no coefficient) in canonical form; empty for the
// constant monomial.
std::string monomial_str(const VarSet& vs, const Expo& e);

}  // namespace lnd
