#include "lnd/automorphism.hpp"

#include <stdexcept>

namespace lnd {

namespace {

// Hard stop for exponential series; reached only on invalid certificates.
constexpr long kSeriesSafetyCap = 100000;

}  // namespace

Auto::Auto(VarSetPtr vs, std::vector<Poly> images) : vs_(std::move(vs)), images_(std::move(images)) {
    if (images_.size() != vs_->size()) throw std::invalid_argument("Auto: image arity");
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (!same_varset(images_[i].varset(), vs_))
            throw std::invalid_argument("Auto: image varset mismatch");
        if (vs_->is_param(i) && images_[i] != Poly::variable(vs_, i))
            throw std::invalid_argument("Auto: parameter variable '" + vs_->name(i) +
                                        "' must map to itself");
    }
}

Auto Auto::identity(VarSetPtr vs) {
    std::vector<Poly> images;
    images.reserve(vs->size());
    for (std::size_t i = 0; i < vs->size(); ++i) images.push_back(Poly::variable(vs, i));
    return Auto(std::move(vs), std::move(images));
}

bool Auto::is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
        if (images_[i] != Poly::variable(vs_, i)) return false;
    return true;
}

bool Auto::operator==(const Auto& o) const {
    return same_varset(vs_, o.vs_) && images_ == o.images_;
}

Poly Auto::apply(const Poly& f) const {
    if (!same_varset(vs_, f.varset())) throw std::invalid_argument("Auto::apply: varset mismatch");
    return f.substitute(images_);
}

RatFn Auto::apply(const RatFn& f) const {
    Poly dn = apply(f.den());
    if (dn.is_zero())
        throw std::domain_error("Auto::apply: denominator maps to the zero polynomial");
    return RatFn(apply(f.num()), std::move(dn));
}

Auto compose(const Auto& a, const Auto& b) {
    if (!same_varset(a.varset(), b.varset()))
        throw std::invalid_argument("compose: varset mismatch");
    std::vector<Poly> images;
    images.reserve(b.images().size());
    for (const Poly& img : b.images()) images.push_back(a.apply(img));
    return Auto(a.varset(), std::move(images));
}

namespace {

Poly exp_series_on(const Deriv& d, std::size_t var) {
    Poly acc = Poly::variable(d.varset(), var);
    Poly term = acc;
    Rat fact(1);
    for (long m = 1;; ++m) {
        term = d.apply(term);
        if (term.is_zero()) break;
        if (m > kSeriesSafetyCap)
            throw std::logic_error("exp series did not terminate; invalid certificate");
        fact *= m;
        acc += term * Rat(1 / fact);
    }
    return acc;
}

Auto exp_unchecked(const Deriv& d) {
    std::vector<Poly> images;
    const VarSetPtr& vs = d.varset();
    images.reserve(vs->size());
    for (std::size_t i = 0; i < vs->size(); ++i) {
        if (vs->is_param(i)) {
            images.push_back(Poly::variable(vs, i));
        } else {
            images.push_back(exp_series_on(d, i));
        }
    }
    return Auto(vs, std::move(images));
}

}  // namespace

Auto exp_derivation(const Deriv& d, const LndCert& cert) {
    if (!cert.certified())
        throw std::invalid_argument("exp_derivation: certificate is Unknown; not proven LND");
    return exp_unchecked(d);
}

Deriv log_automorphism(const Auto& a, long cap) {
    const VarSetPtr& vs = a.varset();
    std::vector<Poly> coeffs(vs->size(), Poly(vs));
    for (std::size_t i = 0; i < vs->size(); ++i) {
        if (vs->is_param(i)) continue;
        // u^m(x_i) with u = a* - id, Mercator series for log(id + u).
        Poly term = a.image(i) - Poly::variable(vs, i);
        Poly acc(vs);
        long m = 1;
        int sign = 1;
        while (!term.is_zero()) {
            if (m > cap)
                throw NotUnipotent("log: not unipotent within cap on variable '" + vs->name(i) +
                                   "'");
            acc += term * Rat(Rat(sign) / m);
            term = a.apply(term) - term;
            ++m;
            sign = -sign;
        }
        coeffs[i] = std::move(acc);
    }
    Deriv d(vs, std::move(coeffs));
    if (exp_unchecked(d) != a)
        throw std::logic_error("log: round-trip verification failed (input is not unipotent)");
    return d;
}

Deriv bch(const Deriv& d1, const Deriv& d2, const LndCert& c1, const LndCert& c2, long cap) {
    Auto a = exp_derivation(d1, c1);
    Auto b = exp_derivation(d2, c2);
    return log_automorphism(compose(a, b), cap);
}

CommutatorLog group_commutator_log(const Deriv& d1, const Deriv& d2, const LndCert& c1,
                                   const LndCert& c2, long cap) {
    Auto a = exp_derivation(d1, c1);
    Auto b = exp_derivation(d2, c2);
    Auto ai = exp_derivation(-d1, c1);
    Auto bi = exp_derivation(-d2, c2);
    Auto comm = compose(a, compose(b, compose(ai, bi)));
    CommutatorLog out{log_automorphism(comm, cap), bracket(d1, d2), false};
    out.equal = out.log == out.lie_bracket;
    return out;
}

bool is_unitriangular_for(const Auto& a, const std::vector<std::size_t>& order) {
    const VarSet& vs = *a.varset();
    if (order.size() != vs.non_param_count()) return false;
    std::vector<bool> seen(vs.size(), false);
    for (std::size_t i = 0; i < vs.size(); ++i)
        if (vs.is_param(i)) seen[i] = true;
    for (std::size_t idx : order) {
        if (idx >= vs.size() || vs.is_param(idx) || seen[idx]) return false;
        Poly p = a.image(idx) - Poly::variable(a.varset(), idx);
        for (std::size_t v = 0; v < vs.size(); ++v)
            if (!seen[v] && p.depends_on(v)) return false;
        seen[idx] = true;
    }
    return true;
}

Auto triangular_inverse(const Auto& a, const std::vector<std::size_t>& order) {
    if (!is_unitriangular_for(a, order))
        throw std::invalid_argument("triangular_inverse: not unitriangular for the given order");
    const VarSetPtr& vs = a.varset();
    std::vector<Poly> inv;
    inv.reserve(vs->size());
    for (std::size_t i = 0; i < vs->size(); ++i) inv.push_back(Poly::variable(vs, i));
    for (std::size_t idx : order) {
        Poly p = a.image(idx) - Poly::variable(vs, idx);
        // p involves only earlier variables, whose inverse images are final.
        inv[idx] = Poly::variable(vs, idx) - p.substitute(inv);
    }
    Auto result(vs, std::move(inv));
    if (!compose(a, result).is_identity() || !compose(result, a).is_identity())
        throw std::logic_error("triangular_inverse: composition verification failed");
    return result;
}

long automorphism_degree(const Auto& a, const Auto& a_inv) {
    if (!compose(a, a_inv).is_identity() || !compose(a_inv, a).is_identity())
        throw std::invalid_argument("automorphism_degree: pair is not mutually inverse");
    long best = kNegInfDeg;
    const VarSet& vs = *a.varset();
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (vs.is_param(i)) continue;
        best = std::max(best, a.image(i).total_degree());
        best = std::max(best, a_inv.image(i).total_degree());
    }
    return best;
}

Auto one_parameter(const Deriv& d, const LndCert& cert, const Rat& t) {
    if (t == 0) return Auto::identity(d.varset());
    // Scaling by a nonzero constant preserves both certificate kinds.
    return exp_derivation(d.scale(t), cert);
}

Deriv pushforward(const Deriv& d, const Auto& tau, const Auto& tau_inv) {
    const VarSetPtr& vs = d.varset();
    std::vector<Poly> coeffs(vs->size(), Poly(vs));
    for (std::size_t i = 0; i < vs->size(); ++i) {
        if (vs->is_param(i)) continue;
        coeffs[i] = tau.apply(d.apply(tau_inv.image(i)));
    }
    return Deriv(vs, std::move(coeffs));
}

}  // namespace lnd
