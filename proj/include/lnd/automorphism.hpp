#pragma once

#include <vector>

#include "lnd/derivation.hpp"

namespace lnd {

// Thrown by log when (a* - id) fails to vanish on a generator within the cap.
struct NotUnipotent : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A polynomial automorphism given by the pullback images of the variables.
// Parameter variables map to themselves. Instances come from the identity,
// exponentials of certified LNDs, unitriangular data, composition, and
// triangular inversion, so the inverse always exists through one of those
// channels.
class Auto {
public:
    Auto(VarSetPtr vs, std::vector<Poly> images);
    static Auto identity(VarSetPtr vs);

    const VarSetPtr& varset() const { return vs_; }
    const Poly& image(std::size_t var) const { return images_[var]; }
    const std::vector<Poly>& images() const { return images_; }

    bool is_identity() const;
    bool operator==(const Auto& o) const;
    bool operator!=(const Auto& o) const { return !(*this == o); }

    // Pullback action: substitutes the images into f.
    Poly apply(const Poly& f) const;
    RatFn apply(const RatFn& f) const;

private:
    VarSetPtr vs_;
    std::vector<Poly> images_;
};

// "a then b" as maps on points; pullback images are a*(b*(x_i)).
Auto compose(const Auto& a, const Auto& b);

// exp(d): images sum_{m>=0} d^m(x_i)/m!. Requires a non-Unknown certificate.
Auto exp_derivation(const Deriv& d, const LndCert& cert);

// log(a): D(x_i) = sum_{m>=1} (-1)^(m+1) (a*-id)^m(x_i)/m. Requires
// (a*-id) to vanish on every generator within cap; the result is verified
// by re-exponentiation before returning.
Deriv log_automorphism(const Auto& a, long cap = kDefaultCap);

// log(exp(d1) o exp(d2)); exp(result) = compose(exp(d1), exp(d2)) exactly.
Deriv bch(const Deriv& d1, const Deriv& d2, const LndCert& c1, const LndCert& c2,
          long cap = kDefaultCap);

// log of exp(d1) o exp(d2) o exp(-d1) o exp(-d2), reported next to the Lie
// bracket for comparison; equality is reported, not asserted.
struct CommutatorLog {
    Deriv log;
    Deriv lie_bracket;
    bool equal;
};
CommutatorLog group_commutator_log(const Deriv& d1, const Deriv& d2, const LndCert& c1,
                                   const LndCert& c2, long cap = kDefaultCap);

// True iff image(order[i]) - order[i] involves only order[0..i-1] and
// parameters.
bool is_unitriangular_for(const Auto& a, const std::vector<std::size_t>& order);

// Back-substitution inverse of a unitriangular automorphism; verified by
// composition on both sides.
Auto triangular_inverse(const Auto& a, const std::vector<std::size_t>& order);

// max over variables of the total degrees of the images of a and a_inv;
// throws when the pair is not mutually inverse.
long automorphism_degree(const Auto& a, const Auto& a_inv);

// exp(t*d).
Auto one_parameter(const Deriv& d, const LndCert& cert, const Rat& t);

// tau* o d o (tau^-1)* as a derivation (the conjugate of d under tau).
Deriv pushforward(const Deriv& d, const Auto& tau, const Auto& tau_inv);

}  // namespace lnd
