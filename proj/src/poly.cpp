#include "lnd/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace lnd {

int grlex_cmp(const Expo& a, const Expo& b) {
    std::uint64_t da = expo_total(a), db = expo_total(b);
    if (da != db) return da < db ? -1 : 1;
    std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t ai = i < a.size() ? a[i] : 0;
        std::uint32_t bi = i < b.size() ? b[i] : 0;
        if (ai != bi) return ai < bi ? -1 : 1;
    }
    return 0;
}

std::string degree_str(long d) {
    return d == kNegInfDeg ? std::string("-inf") : std::to_string(d);
}

Poly Poly::constant(VarSetPtr vs, const Rat& c) {
    Poly p(std::move(vs));
    if (c != 0) p.terms_.emplace(Expo(p.vs_->size(), 0), c);
    return p;
}

Poly Poly::variable(VarSetPtr vs, std::size_t index) {
    Poly p(std::move(vs));
    if (index >= p.vs_->size()) throw std::out_of_range("Poly::variable index");
    Expo e(p.vs_->size(), 0);
    e[index] = 1;
    p.terms_.emplace(std::move(e), Rat(1));
    return p;
}

Poly Poly::monomial(VarSetPtr vs, Expo e, const Rat& c) {
    Poly p(std::move(vs));
    if (e.size() != p.vs_->size()) throw std::invalid_argument("Poly::monomial arity");
    if (c != 0) p.terms_.emplace(std::move(e), c);
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && expo_total(terms_.begin()->first) == 0);
}

Rat Poly::constant_value() const {
    if (terms_.empty()) return Rat(0);
    if (!is_constant()) throw std::logic_error("constant_value of non-constant");
    return terms_.begin()->second;
}

bool Poly::operator==(const Poly& o) const {
    if (!same_varset(vs_, o.vs_)) return false;
    return terms_ == o.terms_;
}

void Poly::add_term(const Expo& e, const Rat& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly r(vs_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, Rat(-c));
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (!same_varset(vs_, o.vs_)) throw std::invalid_argument("Poly: varset mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (!same_varset(vs_, o.vs_)) throw std::invalid_argument("Poly: varset mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, Rat(-c));
    return *this;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    r += o;
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r = *this;
    r -= o;
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    if (!same_varset(vs_, o.vs_)) throw std::invalid_argument("Poly: varset mismatch");
    Poly r(vs_);
    if (terms_.empty() || o.terms_.empty()) return r;
    Expo e(vs_->size());
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            Rat c = ca * cb;
            r.add_term(e, c);
        }
    }
    return r;
}

Poly& Poly::operator*=(const Poly& o) {
    *this = *this * o;
    return *this;
}

Poly Poly::operator*(const Rat& c) const {
    Poly r(vs_);
    if (c == 0) return r;
    for (const auto& [e, a] : terms_) r.terms_.emplace(e, Rat(a * c));
    return r;
}

Poly operator*(const Rat& c, const Poly& p) { return p * c; }

Poly Poly::pow(std::uint32_t n) const {
    Poly r = Poly::constant(vs_, Rat(1));
    Poly base = *this;
    while (n > 0) {
        if (n & 1u) r *= base;
        n >>= 1u;
        if (n) base *= base;
    }
    return r;
}

long Poly::total_degree() const {
    if (terms_.empty()) return kNegInfDeg;
    // Leading term has maximal total degree under graded-lex.
    return static_cast<long>(expo_total(terms_.begin()->first));
}

long Poly::weighted_degree(std::span<const long> weights) const {
    if (terms_.empty()) return kNegInfDeg;
    if (weights.size() != vs_->size())
        throw std::invalid_argument("weighted_degree: weight count mismatch");
    long best = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        long d = 0;
        for (std::size_t i = 0; i < e.size(); ++i) d += static_cast<long>(e[i]) * weights[i];
        if (first || d > best) best = d;
        first = false;
    }
    return best;
}

std::uint32_t Poly::degree_in(std::size_t var) const {
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
}

bool Poly::depends_on(std::size_t var) const {
    for (const auto& [e, c] : terms_)
        if (e[var] > 0) return true;
    return false;
}

const Expo& Poly::leading_expo() const {
    if (terms_.empty()) throw std::logic_error("leading_expo of zero polynomial");
    return terms_.begin()->first;
}

const Rat& Poly::leading_coeff() const {
    if (terms_.empty()) throw std::logic_error("leading_coeff of zero polynomial");
    return terms_.begin()->second;
}

Poly Poly::monic() const {
    if (terms_.empty()) return *this;
    Rat inv = 1 / leading_coeff();
    return *this * inv;
}

Poly Poly::derivative(std::size_t var) const {
    Poly r(vs_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Expo d = e;
        d[var] -= 1;
        r.add_term(d, Rat(c * e[var]));
    }
    return r;
}

Rat Poly::evaluate(std::span<const Rat> point) const {
    if (point.size() != vs_->size())
        throw std::invalid_argument("evaluate: point arity mismatch");
    Rat total(0);
    for (const auto& [e, c] : terms_) {
        Rat m = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            for (std::uint32_t k = 0; k < e[i]; ++k) m *= point[i];
        }
        total += m;
    }
    return total;
}

Poly Poly::substitute(std::span<const Poly> images) const {
    if (images.size() != vs_->size())
        throw std::invalid_argument("substitute: image arity mismatch");
    VarSetPtr target = images.empty() ? vs_ : images[0].varset();
    // Cache powers of each image up to the largest needed exponent.
    std::vector<std::vector<Poly>> powers(vs_->size());
    for (std::size_t i = 0; i < vs_->size(); ++i)
        powers[i].push_back(Poly::constant(target, Rat(1)));
    Poly result(target);
    for (const auto& [e, c] : terms_) {
        Poly term = Poly::constant(target, c);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            auto& pw = powers[i];
            while (pw.size() <= e[i]) pw.push_back(pw.back() * images[i]);
            term *= pw[e[i]];
        }
        result += term;
    }
    return result;
}

std::string monomial_str(const VarSet& vs, const Expo& e) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!first) os << '*';
        os << vs.name(i);
        if (e[i] >= 2) os << '^' << e[i];
        first = false;
    }
    return os.str();
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        bool neg = c < 0;
        Rat a = rat_abs(c);
        if (first) {
            if (neg) os << '-';
        } else {
            os << (neg ? " - " : " + ");
        }
        std::string mono = monomial_str(*vs_, e);
        if (mono.empty()) {
            os << rat_str(a);
        } else if (rat_is_one(a)) {
            os << mono;
        } else {
            os << rat_str(a) << '*' << mono;
        }
        first = false;
    }
    return os.str();
}

}  // namespace lnd
