#include "lnd/gcd.hpp"

#include <stdexcept>

namespace lnd {

namespace {

// Divisibility of monomials: returns e - d when d <= e componentwise.
std::optional<Expo> expo_div(const Expo& e, const Expo& d) {
    Expo r(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (d[i] > e[i]) return std::nullopt;
        r[i] = e[i] - d[i];
    }
    return r;
}

// Univariate view of p in variable `var`: coefficients (polynomials free of
// `var`) indexed by the power of `var`.
std::vector<Poly> coeffs_in(const Poly& p, std::size_t var) {
    std::vector<Poly> out;
    for (const auto& [e, c] : p.terms()) {
        std::uint32_t d = e[var];
        if (out.size() <= d) out.resize(d + 1, Poly(p.varset()));
        Expo rest = e;
        rest[var] = 0;
        out[d].add_term(rest, c);
    }
    while (!out.empty() && out.back().is_zero()) out.pop_back();
    return out;
}

Poly from_coeffs(const std::vector<Poly>& cs, std::size_t var, const VarSetPtr& vs) {
    Poly r(vs);
    for (std::size_t d = 0; d < cs.size(); ++d) {
        for (const auto& [e, c] : cs[d].terms()) {
            Expo full = e;
            full[var] += static_cast<std::uint32_t>(d);
            r.add_term(full, c);
        }
    }
    return r;
}

Poly mul_var_pow(const Poly& p, std::size_t var, std::uint32_t k) {
    Poly r(p.varset());
    for (const auto& [e, c] : p.terms()) {
        Expo f = e;
        f[var] += k;
        r.add_term(f, c);
    }
    return r;
}

Poly exact_div(const Poly& p, const Poly& q, const char* where) {
    auto r = try_divide(p, q);
    if (!r) throw std::logic_error(std::string("exact division failed in ") + where);
    return *r;
}

// Pseudo-remainder: lc(B)^(deg A - deg B + 1) * A mod B in variable var.
// Requires deg_var(A) >= deg_var(B) >= 0, B nonzero in var view.
Poly pseudo_rem(const Poly& A, const Poly& B, std::size_t var) {
    auto b = coeffs_in(B, var);
    Poly lcB = b.back();
    auto degB = b.size() - 1;
    Poly R = A;
    auto degA = coeffs_in(A, var).size() - 1;
    long mult = static_cast<long>(degA) - static_cast<long>(degB) + 1;
    while (true) {
        auto r = coeffs_in(R, var);
        if (r.size() <= degB) break;
        std::uint32_t shift = static_cast<std::uint32_t>(r.size() - 1 - degB);
        // R <- lc(B)*R - lc(R)*x^shift*B
        R = lcB * R - mul_var_pow(r.back() * B, var, shift);
        --mult;
    }
    // Match the exact lc(B)^(degA-degB+1) convention.
    for (long i = 0; i < mult; ++i) R = lcB * R;
    return R;
}

Poly gcd_impl(const Poly& p, const Poly& q);

// Content of p viewed in variable var: gcd of its univariate coefficients.
Poly content_in(const Poly& p, std::size_t var) {
    auto cs = coeffs_in(p, var);
    Poly g(p.varset());
    for (const auto& c : cs) g = gcd_impl(g, c);
    return g;
}

// gcd of polynomials not involving any variable beyond `top` exclusive
// (callers pass the highest occurring variable). Result is monic.
Poly gcd_impl(const Poly& p, const Poly& q) {
    if (p.is_zero()) return q.monic();
    if (q.is_zero()) return p.monic();
    if (p.is_constant() || q.is_constant()) return Poly::constant(p.varset(), Rat(1));

    // Main variable: highest-index variable occurring in either operand.
    std::size_t n = p.varset()->size();
    std::size_t var = n;
    for (std::size_t i = n; i-- > 0;) {
        if (p.depends_on(i) || q.depends_on(i)) {
            var = i;
            break;
        }
    }

    Poly cp = content_in(p, var);
    Poly cq = content_in(q, var);
    Poly cont = gcd_impl(cp, cq);
    Poly A = exact_div(p, cp, "primitive part");
    Poly B = exact_div(q, cq, "primitive part");

    if (coeffs_in(A, var).size() < coeffs_in(B, var).size()) std::swap(A, B);

    // Subresultant PRS on the primitive parts.
    Poly g = Poly::constant(p.varset(), Rat(1));
    Poly h = g;
    while (true) {
        auto ca = coeffs_in(A, var);
        auto cb = coeffs_in(B, var);
        long delta = static_cast<long>(ca.size()) - static_cast<long>(cb.size());
        Poly R = pseudo_rem(A, B, var);
        if (R.is_zero()) break;
        if (!R.depends_on(var)) {
            // Nontrivial remainder of degree 0 in the main variable: primitive
            // parts are coprime.
            return cont.monic();
        }
        A = B;
        Poly divisor = g * h.pow(static_cast<std::uint32_t>(delta));
        B = exact_div(R, divisor, "subresultant step");
        g = coeffs_in(A, var).back();
        if (delta > 0) {
            h = exact_div(g.pow(static_cast<std::uint32_t>(delta)),
                          h.pow(static_cast<std::uint32_t>(delta - 1)), "h update");
        }
        // delta == 0: h unchanged.
    }
    Poly pp = exact_div(B, content_in(B, var), "final primitive part");
    return (cont * pp).monic();
}

}  // namespace

std::optional<Poly> try_divide(const Poly& p, const Poly& q) {
    if (q.is_zero()) throw std::invalid_argument("division by zero polynomial");
    Poly r = p;
    Poly quot(p.varset());
    const Expo& lq = q.leading_expo();
    const Rat& cq = q.leading_coeff();
    while (!r.is_zero()) {
        auto m = expo_div(r.leading_expo(), lq);
        if (!m) return std::nullopt;
        Rat c = r.leading_coeff() / cq;
        Poly t = Poly::monomial(p.varset(), *m, c);
        quot += t;
        r -= t * q;
    }
    return quot;
}

Poly poly_gcd(const Poly& p, const Poly& q) {
    if (!same_varset(p.varset(), q.varset()))
        throw std::invalid_argument("poly_gcd: varset mismatch");
    return gcd_impl(p, q);
}

bool divides_power(const Poly& d, const Poly& f) {
    if (d.is_zero()) throw std::invalid_argument("divides_power: zero divisor");
    Poly rest = d.monic();
    while (!rest.is_constant()) {
        Poly g = poly_gcd(rest, f);
        if (g.is_constant()) return false;
        rest = *try_divide(rest, g);
    }
    return true;
}

}  // namespace lnd
