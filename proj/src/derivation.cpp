#include "lnd/derivation.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace lnd {

Deriv::Deriv(VarSetPtr vs, std::vector<Poly> coeffs) : vs_(std::move(vs)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != vs_->size()) throw std::invalid_argument("Deriv: coefficient arity");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (!same_varset(coeffs_[i].varset(), vs_))
            throw std::invalid_argument("Deriv: coefficient varset mismatch");
        if (vs_->is_param(i) && !coeffs_[i].is_zero())
            throw std::invalid_argument("Deriv: nonzero coefficient on parameter variable '" +
                                        vs_->name(i) + "'");
    }
}

Deriv Deriv::zero(VarSetPtr vs) {
    std::vector<Poly> cs(vs->size(), Poly(vs));
    return Deriv(std::move(vs), std::move(cs));
}

Deriv Deriv::coordinate(VarSetPtr vs, std::size_t var) {
    if (vs->is_param(var)) throw std::invalid_argument("Deriv: coordinate on parameter");
    std::vector<Poly> cs(vs->size(), Poly(vs));
    cs[var] = Poly::constant(vs, Rat(1));
    return Deriv(std::move(vs), std::move(cs));
}

bool Deriv::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Poly& p) { return p.is_zero(); });
}

bool Deriv::operator==(const Deriv& o) const {
    return same_varset(vs_, o.vs_) && coeffs_ == o.coeffs_;
}

Deriv Deriv::operator+(const Deriv& o) const {
    if (!same_varset(vs_, o.vs_)) throw std::invalid_argument("Deriv: varset mismatch");
    std::vector<Poly> cs;
    cs.reserve(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) cs.push_back(coeffs_[i] + o.coeffs_[i]);
    return Deriv(vs_, std::move(cs));
}

Deriv Deriv::operator-(const Deriv& o) const { return *this + (-o); }

Deriv Deriv::operator-() const {
    std::vector<Poly> cs;
    cs.reserve(coeffs_.size());
    for (const auto& c : coeffs_) cs.push_back(-c);
    return Deriv(vs_, std::move(cs));
}

Deriv Deriv::scale(const Rat& c) const {
    std::vector<Poly> cs;
    cs.reserve(coeffs_.size());
    for (const auto& p : coeffs_) cs.push_back(p * c);
    return Deriv(vs_, std::move(cs));
}

Deriv Deriv::scale(const Poly& f) const {
    std::vector<Poly> cs;
    cs.reserve(coeffs_.size());
    for (const auto& p : coeffs_) cs.push_back(p * f);
    return Deriv(vs_, std::move(cs));
}

std::optional<Deriv> Deriv::try_scale(const RatFn& f) const {
    std::vector<Poly> cs;
    cs.reserve(coeffs_.size());
    for (const auto& p : coeffs_) {
        RatFn v = f * RatFn(p);
        if (!v.is_poly()) return std::nullopt;
        cs.push_back(v.as_poly());
    }
    return Deriv(vs_, std::move(cs));
}

Poly Deriv::apply(const Poly& f) const {
    if (!same_varset(vs_, f.varset())) throw std::invalid_argument("Deriv::apply: varset mismatch");
    Poly r(vs_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        r += coeffs_[i] * f.derivative(i);
    }
    return r;
}

RatFn Deriv::apply(const RatFn& f) const {
    if (f.is_poly()) return RatFn(apply(f.as_poly()));
    Poly dn = apply(f.num());
    Poly dd = apply(f.den());
    return RatFn(dn * f.den() - f.num() * dd, f.den() * f.den());
}

Deriv bracket(const Deriv& a, const Deriv& b) {
    if (!same_varset(a.varset(), b.varset()))
        throw std::invalid_argument("bracket: varset mismatch");
    std::vector<Poly> cs;
    cs.reserve(a.coeffs().size());
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        cs.push_back(a.apply(b.coeff(i)) - b.apply(a.coeff(i)));
    return Deriv(a.varset(), std::move(cs));
}

std::string LndCert::str(const VarSet& vs) const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Triangular: {
            os << "Triangular(";
            for (std::size_t i = 0; i < order.size(); ++i) {
                if (i) os << ',';
                os << vs.name(order[i]);
            }
            os << ')';
            break;
        }
        case Kind::IteratedZero: {
            os << "IteratedZero(";
            bool first = true;
            for (const auto& [v, m] : bounds) {
                if (!first) os << ',';
                os << vs.name(v) << ':' << m;
                first = false;
            }
            os << ')';
            break;
        }
        case Kind::Unknown:
            os << "Unknown(cap=" << cap << ')';
            break;
    }
    return os.str();
}

std::optional<long> nilpotency_index(const Deriv& d, Poly f, long cap) {
    if (cap < 1) throw std::invalid_argument("nilpotency_index: cap must be >= 1");
    long m = 0;
    while (!f.is_zero()) {
        if (m >= cap) return std::nullopt;
        f = d.apply(f);
        ++m;
    }
    return m;
}

bool is_triangular_for(const Deriv& d, const std::vector<std::size_t>& order) {
    const VarSet& vs = *d.varset();
    std::vector<bool> seen(vs.size(), false);
    for (std::size_t i = 0; i < vs.size(); ++i)
        if (vs.is_param(i)) seen[i] = true;
    for (std::size_t idx : order) {
        const Poly& c = d.coeff(idx);
        for (std::size_t v = 0; v < vs.size(); ++v)
            if (!seen[v] && c.depends_on(v)) return false;
        seen[idx] = true;
    }
    return true;
}

std::optional<std::map<std::size_t, long>> try_iterated_zero(const Deriv& d, long cap) {
    std::map<std::size_t, long> bounds;
    const VarSet& vs = *d.varset();
    for (std::size_t v : vs.non_param_indices()) {
        auto m = nilpotency_index(d, Poly::variable(d.varset(), v), cap);
        if (!m) return std::nullopt;
        bounds[v] = *m;
    }
    return bounds;
}

LndCert certify_lnd(const Deriv& d, long cap) {
    if (cap < 1) throw std::invalid_argument("certify_lnd: cap must be >= 1");
    const VarSet& vs = *d.varset();
    const auto& plain = vs.non_param_indices();

    // Dependency digraph: edge u -> v when u appears in the coefficient on v.
    // Kahn's algorithm with smallest-index tie break; acyclic iff triangular.
    std::vector<std::size_t> indeg(vs.size(), 0);
    std::vector<std::vector<std::size_t>> succ(vs.size());
    for (std::size_t v : plain) {
        const Poly& c = d.coeff(v);
        for (std::size_t u : plain) {
            if (c.depends_on(u)) {
                succ[u].push_back(v);
                ++indeg[v];
            }
        }
    }
    std::vector<std::size_t> order;
    std::vector<bool> done(vs.size(), false);
    while (order.size() < plain.size()) {
        std::size_t pick = vs.size();
        for (std::size_t v : plain) {
            if (!done[v] && indeg[v] == 0) {
                pick = v;
                break;
            }
        }
        if (pick == vs.size()) break;  // cycle
        done[pick] = true;
        order.push_back(pick);
        for (std::size_t w : succ[pick])
            if (indeg[w] > 0) --indeg[w];
    }
    if (order.size() == plain.size()) {
        LndCert cert;
        cert.kind = LndCert::Kind::Triangular;
        cert.order = std::move(order);
        cert.cap = cap;
        return cert;
    }

    if (auto bounds = try_iterated_zero(d, cap)) {
        LndCert cert;
        cert.kind = LndCert::Kind::IteratedZero;
        cert.bounds = std::move(*bounds);
        cert.cap = cap;
        return cert;
    }

    LndCert cert;
    cert.kind = LndCert::Kind::Unknown;
    cert.cap = cap;
    return cert;
}

RatMatrix coefficient_matrix(const std::vector<Deriv>& family) {
    if (family.empty()) throw std::invalid_argument("coefficient_matrix: empty family");
    const VarSetPtr& vs = family[0].varset();
    const auto& plain = vs->non_param_indices();
    RatMatrix m(family.size(), plain.size(), vs);
    for (std::size_t r = 0; r < family.size(); ++r) {
        if (!same_varset(family[r].varset(), vs))
            throw std::invalid_argument("coefficient_matrix: varset mismatch");
        for (std::size_t c = 0; c < plain.size(); ++c)
            m.at(r, c) = RatFn(family[r].coeff(plain[c]));
    }
    return m;
}

bool is_locally_free(const std::vector<Deriv>& family) {
    if (family.empty()) return true;
    if (family.size() > family[0].varset()->non_param_count()) return false;
    return symbolic_rank(coefficient_matrix(family)) == family.size();
}

std::vector<std::pair<std::size_t, std::size_t>> check_commuting(const std::vector<Deriv>& family) {
    std::vector<std::pair<std::size_t, std::size_t>> bad;
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = i + 1; j < family.size(); ++j)
            if (!bracket(family[i], family[j]).is_zero()) bad.emplace_back(i + 1, j + 1);
    return bad;
}

}  // namespace lnd
