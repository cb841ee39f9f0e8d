#pragma once

#include <map>
#include <optional>
#include <vector>

#include "lnd/automorphism.hpp"
#include "lnd/derivation.hpp"

namespace lnd {

constexpr long kDefaultDegreeCap = 12;
constexpr long kDefaultSubstitutionCap = 1000;

// An ordered, pairwise-commuting, locally free family of certified LNDs.
// The order matters: it determines the annihilator tower A_i = the joint
// kernel of the generators from position i on.
class Family {
public:
    explicit Family(std::vector<Deriv> gens, long cert_cap = kDefaultCap);
    Family(std::vector<Deriv> gens, std::vector<LndCert> certs);

    std::size_t size() const { return gens_.size(); }
    const Deriv& gen(std::size_t i) const { return gens_[i]; }
    const std::vector<Deriv>& gens() const { return gens_; }
    const LndCert& cert(std::size_t i) const { return certs_[i]; }
    const VarSetPtr& varset() const { return gens_[0].varset(); }

    // True iff every generator from position `from` (0-based) kills f.
    bool annihilated_from(const RatFn& f, std::size_t from) const;
    bool annihilated_by_all(const RatFn& f) const { return annihilated_from(f, 0); }

private:
    std::vector<Deriv> gens_;
    std::vector<LndCert> certs_;
    void validate();
};

// Slice data: y_i in the joint kernel of the other generators with
// d_i(y_i) in A_1 \ {0}; x_i = y_i / d_i(y_i) satisfies d_i(x_j) = delta_ij;
// h = prod_i d_i(y_i).
struct SliceSys {
    Family fam;
    std::vector<Poly> y;
    std::vector<RatFn> x;
    Poly h;
};

// Searches polynomials of total degree <= D for D = 1..degree_cap. For each
// i the candidate space is the joint kernel of the other generators; the
// canonical choice is the reduced-echelon kernel basis vector with the
// smallest leading monomial (ascending graded-lex) not killed by d_i,
// normalized monic. Then y_i is replaced by d_i(y_i) until d_i(y_i) lands
// in ker d_i (each step stays in the joint kernel because the family
// commutes, and strictly drops the nilpotency index).
SliceSys build_slice_system(const Family& fam, long degree_cap = kDefaultDegreeCap);

// Slice projection (prod_i exp(-x_i d_i))(g): a ring morphism onto the part
// of the localization killed by every generator; identity on such inputs.
RatFn kernel_project(const RatFn& g, const SliceSys& s);

// Expansion g = sum_alpha c_alpha x^alpha with every c_alpha killed by all
// generators; c_alpha = project(d^alpha(g) / alpha!). Keys have one slot
// per generator.
std::map<Expo, RatFn, GrlexDesc> slice_expand(const Poly& g, const SliceSys& s);

// Smallest i in 1..k+1 such that every generator from position i (1-based)
// on kills f; k+1 means the last generator does not kill f.
std::size_t annihilated_level(const RatFn& f, const Family& fam);

struct MembershipWitness {
    enum class Kind { Span, Coefficient, Denominator };
    Kind kind = Kind::Span;
    std::size_t j = 0;  // 1-based coefficient index
    std::size_t l = 0;  // 1-based generator index
    std::optional<RatFn> value;
};

struct MembershipReport {
    bool member = false;
    std::size_t level = 0;  // 1..k+1 when member; first nonzero coefficient
    std::vector<RatFn> coeffs;
    std::optional<MembershipWitness> witness;
};

// Membership of d in the dJ-like algebra of fam: d = sum f_j d_j with
// d_l(f_j) = 0 for all l >= j and every reduced denominator killed by all
// generators. The zero derivation is a member at level k+1.
MembershipReport dj_membership(const Deriv& d, const Family& fam);

// Membership in the maximal commutative algebra over fam: d = sum f_j d_j
// with every f_j killed by every generator (no denominator condition).
MembershipReport rx_membership(const Deriv& d, const Family& fam);

struct InclusionCert {
    bool holds = false;
    std::vector<MembershipReport> memberships;  // one per generator of small
    std::vector<std::size_t> required_levels;
    std::string reason;  // set when !holds
};

// Whether every member of small's algebra lies in big's. Checked on
// generators: the i-th generator of small must sit in big at level
// >= k-m+i with its tail coefficients killed by the tail generators, and
// the m x m tail coefficient matrix must be invertible over K(X).
InclusionCert family_includes(const Family& big, const Family& small);

bool family_equivalent(const Family& f1, const Family& f2);

// From a bracket-closed (within its constant-coefficient span) list of
// derivations, produces a pairwise-commuting locally free family of the
// same rank by bracket substitution: while some pair has nonzero bracket,
// a member of the pair (higher index first) is replaced by the bracket
// whenever rank is preserved.
Family commuting_reduction(const std::vector<Deriv>& basis, long cert_cap = kDefaultCap,
                           long substitution_cap = kDefaultSubstitutionCap);

// Cylinder presentation: every ambient variable expanded over the slice
// coordinates; f = h times the distinct denominators of the expansion
// coefficients, so each denominator divides a power of f.
struct CylPres {
    SliceSys slices;
    Poly f;
    // variable index -> expansion of that variable
    std::map<std::size_t, std::map<Expo, RatFn, GrlexDesc>> coord_table;
};

CylPres cylinder_presentation(const Family& fam, const SliceSys& s);

}  // namespace lnd
