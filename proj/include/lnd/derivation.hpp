#pragma once

#include <map>
#include <optional>
#include <vector>

#include "lnd/linalg.hpp"
#include "lnd/poly.hpp"
#include "lnd/ratfn.hpp"

namespace lnd {

constexpr long kDefaultCap = 64;

// Thrown when a bounded search (nilpotency iteration, slice degree search,
// commuting reduction) runs out of budget.
struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A derivation of K[X], stored as its values on the variables. Parameter
// variables always map to 0; the extension to K(X) by the quotient rule is
// computed on demand.
class Deriv {
public:
    Deriv(VarSetPtr vs, std::vector<Poly> coeffs);
    static Deriv zero(VarSetPtr vs);
    static Deriv coordinate(VarSetPtr vs, std::size_t var);

    const VarSetPtr& varset() const { return vs_; }
    const Poly& coeff(std::size_t var) const { return coeffs_[var]; }
    const std::vector<Poly>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    bool operator==(const Deriv& o) const;
    bool operator!=(const Deriv& o) const { return !(*this == o); }

    Deriv operator+(const Deriv& o) const;
    Deriv operator-(const Deriv& o) const;
    Deriv operator-() const;
    Deriv scale(const Rat& c) const;
    Deriv scale(const Poly& f) const;
    // f * d for rational f; nullopt when some coefficient is not polynomial.
    std::optional<Deriv> try_scale(const RatFn& f) const;

    Poly apply(const Poly& f) const;
    RatFn apply(const RatFn& f) const;

private:
    VarSetPtr vs_;
    std::vector<Poly> coeffs_;
};

Deriv bracket(const Deriv& a, const Deriv& b);

// Certificate of local nilpotency.
//   Triangular: a variable order sigma such that the coefficient on
//     sigma(i) involves only sigma(1..i-1) and parameters.
//   IteratedZero: per-variable m with d^m(x) = 0, d^(m-1)(x) != 0.
//   Unknown: nothing proven; callers must treat as "not proven LND".
struct LndCert {
    enum class Kind { Triangular, IteratedZero, Unknown };
    Kind kind = Kind::Unknown;
    std::vector<std::size_t> order;      // Triangular: variable indices
    std::map<std::size_t, long> bounds;  // IteratedZero: variable -> index
    long cap = kDefaultCap;              // Unknown: the exhausted cap

    bool certified() const { return kind != Kind::Unknown; }
    std::string str(const VarSet& vs) const;
};

// Smallest m >= 0 with d^m(f) = 0, or nullopt when m would exceed cap.
std::optional<long> nilpotency_index(const Deriv& d, Poly f, long cap = kDefaultCap);

// Triangular certificate via topological sort of the variable dependency
// digraph; falls back to bounded iteration on the variables; else Unknown.
LndCert certify_lnd(const Deriv& d, long cap = kDefaultCap);

// The bounded-iteration certificate alone (used by certify_lnd, exposed for
// direct checks on derivations that are also triangular).
std::optional<std::map<std::size_t, long>> try_iterated_zero(const Deriv& d, long cap);

// True iff the coefficient on order[i] involves only order[0..i-1] and
// parameter variables.
bool is_triangular_for(const Deriv& d, const std::vector<std::size_t>& order);

// k x n coefficient matrix of the family (columns = non-parameter variables).
RatMatrix coefficient_matrix(const std::vector<Deriv>& family);

// True iff the family's vector fields are independent at the general point.
bool is_locally_free(const std::vector<Deriv>& family);

// All pairs (i, j), 1-based, i < j, with nonzero bracket. Empty iff the
// family pairwise commutes.
std::vector<std::pair<std::size_t, std::size_t>> check_commuting(const std::vector<Deriv>& family);

}  // namespace lnd
