#include "lnd/djlike.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace lnd {

namespace {

constexpr long kProjectionSafetyCap = 10000;

std::string pair_list(const std::vector<std::pair<std::size_t, std::size_t>>& ps) {
    std::ostringstream os;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (i) os << ", ";
        os << '(' << ps[i].first << ',' << ps[i].second << ')';
    }
    return os.str();
}

}  // namespace

Family::Family(std::vector<Deriv> gens, long cert_cap) : gens_(std::move(gens)) {
    if (gens_.empty()) throw std::invalid_argument("Family: empty generator list");
    certs_.reserve(gens_.size());
    for (const Deriv& g : gens_) {
        LndCert c = certify_lnd(g, cert_cap);
        if (!c.certified())
            throw CapExceeded("Family: generator not certified LND within cap " +
                              std::to_string(cert_cap));
        certs_.push_back(std::move(c));
    }
    validate();
}

Family::Family(std::vector<Deriv> gens, std::vector<LndCert> certs)
    : gens_(std::move(gens)), certs_(std::move(certs)) {
    if (gens_.empty()) throw std::invalid_argument("Family: empty generator list");
    if (gens_.size() != certs_.size()) throw std::invalid_argument("Family: cert arity");
    for (const LndCert& c : certs_)
        if (!c.certified()) throw std::invalid_argument("Family: Unknown certificate");
    validate();
}

void Family::validate() {
    for (const Deriv& g : gens_)
        if (!same_varset(g.varset(), gens_[0].varset()))
            throw std::invalid_argument("Family: generator varset mismatch");
    auto bad = check_commuting(gens_);
    if (!bad.empty())
        throw std::invalid_argument("Family: generators do not commute: " + pair_list(bad));
    if (!is_locally_free(gens_))
        throw std::invalid_argument("Family: generators are not locally free");
}

bool Family::annihilated_from(const RatFn& f, std::size_t from) const {
    for (std::size_t j = from; j < gens_.size(); ++j)
        if (!gens_[j].apply(f).is_zero()) return false;
    return true;
}

namespace {

// Monomials of total degree <= cap in the non-parameter variables, in
// ascending graded-lex order.
std::vector<Expo> monomials_up_to(const VarSetPtr& vs, long deg) {
    std::vector<Expo> out;
    const auto& plain = vs->non_param_indices();
    Expo cur(vs->size(), 0);
    // Depth-first enumeration, then a deterministic sort.
    std::vector<std::pair<std::size_t, long>> stack;
    std::function<void(std::size_t, long)> rec = [&](std::size_t pos, long left) {
        if (pos == plain.size()) {
            out.push_back(cur);
            return;
        }
        for (long e = 0; e <= left; ++e) {
            cur[plain[pos]] = static_cast<std::uint32_t>(e);
            rec(pos + 1, left - e);
        }
        cur[plain[pos]] = 0;
    };
    rec(0, deg);
    std::sort(out.begin(), out.end(), [](const Expo& a, const Expo& b) {
        return grlex_cmp(a, b) < 0;
    });
    return out;
}

}  // namespace

SliceSys build_slice_system(const Family& fam, long degree_cap) {
    if (degree_cap < 1) throw std::invalid_argument("build_slice_system: degree_cap >= 1");
    const VarSetPtr& vs = fam.varset();
    std::size_t k = fam.size();
    std::vector<Poly> ys;
    for (std::size_t i = 0; i < k; ++i) {
        std::optional<Poly> found;
        for (long deg = 1; deg <= degree_cap && !found; ++deg) {
            auto monos = monomials_up_to(vs, deg);
            // Joint kernel of the other generators as a linear subspace of
            // the span of `monos`: rows = images, unknowns = coefficients.
            std::vector<Poly> images;
            images.reserve(monos.size());
            std::map<Expo, std::size_t, GrlexDesc> row_index;
            for (const Expo& e : monos) {
                Poly m = Poly::monomial(vs, e, Rat(1));
                for (std::size_t j = 0; j < k; ++j) {
                    if (j == i) continue;
                    Poly im = fam.gen(j).apply(m);
                    for (const auto& [ee, cc] : im.terms()) row_index.emplace(ee, 0);
                }
                images.push_back(std::move(m));
            }
            std::size_t next = 0;
            for (auto& [e, idx] : row_index) idx = next++;
            // One block of rows per other generator.
            std::vector<std::size_t> others;
            for (std::size_t j = 0; j < k; ++j)
                if (j != i) others.push_back(j);
            RatGrid sys(others.size() * row_index.size(), RatVec(monos.size(), Rat(0)));
            for (std::size_t col = 0; col < monos.size(); ++col) {
                for (std::size_t jj = 0; jj < others.size(); ++jj) {
                    Poly im = fam.gen(others[jj]).apply(images[col]);
                    for (const auto& [e, c] : im.terms()) {
                        std::size_t r = jj * row_index.size() + row_index.at(e);
                        sys[r][col] = c;
                    }
                }
            }
            RatGrid kernel = rat_nullspace(sys, monos.size());
            for (const auto& v : kernel) {
                Poly cand(vs);
                for (std::size_t col = 0; col < monos.size(); ++col)
                    cand.add_term(monos[col], v[col]);
                if (fam.gen(i).apply(cand).is_zero()) continue;
                found = cand.monic();
                break;
            }
        }
        if (!found)
            throw CapExceeded("build_slice_system: no slice element for generator " +
                              std::to_string(i + 1) + " within degree cap " +
                              std::to_string(degree_cap));
        // Reduce until d_i(y_i) is killed by d_i.
        Poly y = *found;
        Poly dy = fam.gen(i).apply(y);
        while (!fam.gen(i).apply(dy).is_zero()) {
            y = dy;
            dy = fam.gen(i).apply(y);
        }
        ys.push_back(y.monic());
    }

    SliceSys s{fam, std::move(ys), {}, Poly::constant(vs, Rat(1))};
    for (std::size_t i = 0; i < k; ++i) {
        Poly dy = fam.gen(i).apply(s.y[i]);
        if (dy.is_zero() || !fam.annihilated_by_all(RatFn(dy)))
            throw std::logic_error("build_slice_system: d_i(y_i) not in the joint kernel");
        for (std::size_t j = 0; j < k; ++j)
            if (j != i && !fam.gen(j).apply(s.y[i]).is_zero())
                throw std::logic_error("build_slice_system: off-diagonal derivative nonzero");
        s.x.push_back(RatFn(s.y[i]) / RatFn(dy));
        s.h *= dy;
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            RatFn v = fam.gen(i).apply(s.x[j]);
            RatFn expect = RatFn::constant(vs, Rat(i == j ? 1 : 0));
            if (v != expect) throw std::logic_error("build_slice_system: d_i(x_j) != delta_ij");
        }
    return s;
}

namespace {

// exp(-x_i d_i) as a ring map, term by term; terminates because the inputs
// reaching it have denominators killed by the generators.
RatFn project_one(const RatFn& g, const SliceSys& s, std::size_t i) {
    RatFn acc = g;
    RatFn cur = g;
    RatFn pw = RatFn::constant(g.varset(), Rat(1));
    Rat fact(1);
    for (long m = 1;; ++m) {
        cur = s.fam.gen(i).apply(cur);
        if (cur.is_zero()) break;
        if (m > kProjectionSafetyCap)
            throw std::logic_error("kernel_project: series did not terminate");
        pw = pw * (-s.x[i]);
        fact *= m;
        acc = acc + pw * cur * RatFn::constant(g.varset(), Rat(1 / fact));
    }
    return acc;
}

}  // namespace

RatFn kernel_project(const RatFn& g, const SliceSys& s) {
    if (!s.fam.annihilated_by_all(RatFn(g.den())))
        throw std::invalid_argument(
            "kernel_project: denominator is not in the joint kernel of the family");
    RatFn r = g;
    for (std::size_t i = 0; i < s.fam.size(); ++i) r = project_one(r, s, i);
    return r;
}

namespace {

void expand_rec(const Poly& cur, std::size_t slot, Expo& alpha, Rat& alpha_fact,
                const SliceSys& s, std::map<Expo, RatFn, GrlexDesc>& out) {
    std::size_t k = s.fam.size();
    if (slot == k) {
        RatFn c = kernel_project(RatFn(cur), s) * RatFn::constant(cur.varset(), Rat(1 / alpha_fact));
        if (!c.is_zero()) {
            auto [it, inserted] = out.emplace(alpha, c);
            if (!inserted) throw std::logic_error("slice_expand: duplicate index");
        }
        return;
    }
    Poly p = cur;
    long a = 0;
    Rat saved = alpha_fact;
    while (!p.is_zero()) {
        alpha[slot] = static_cast<std::uint32_t>(a);
        expand_rec(p, slot + 1, alpha, alpha_fact, s, out);
        p = s.fam.gen(slot).apply(p);
        ++a;
        alpha_fact *= a;
    }
    alpha[slot] = 0;
    alpha_fact = saved;
}

}  // namespace

std::map<Expo, RatFn, GrlexDesc> slice_expand(const Poly& g, const SliceSys& s) {
    std::map<Expo, RatFn, GrlexDesc> out;
    Expo alpha(s.fam.size(), 0);
    Rat fact(1);
    expand_rec(g, 0, alpha, fact, s, out);
    return out;
}

std::size_t annihilated_level(const RatFn& f, const Family& fam) {
    std::size_t k = fam.size();
    for (std::size_t l = k; l >= 1; --l) {
        if (!fam.gen(l - 1).apply(f).is_zero()) return l + 1;
    }
    return 1;
}

namespace {

std::vector<RatFn> deriv_target_row(const Deriv& d) {
    const auto& plain = d.varset()->non_param_indices();
    std::vector<RatFn> t;
    t.reserve(plain.size());
    for (std::size_t v : plain) t.push_back(RatFn(d.coeff(v)));
    return t;
}

MembershipReport membership_impl(const Deriv& d, const Family& fam, bool rx) {
    if (!same_varset(d.varset(), fam.varset()))
        throw std::invalid_argument("membership: varset mismatch");
    std::size_t k = fam.size();
    MembershipReport rep;
    if (d.is_zero()) {
        rep.member = true;
        rep.level = k + 1;
        rep.coeffs.assign(k, RatFn::zero(fam.varset()));
        return rep;
    }
    auto sol = solve_in_span(coefficient_matrix(fam.gens()), deriv_target_row(d));
    if (!sol) {
        rep.witness = MembershipWitness{MembershipWitness::Kind::Span, 0, 0, std::nullopt};
        return rep;
    }
    rep.coeffs = std::move(*sol);
    for (std::size_t j = 0; j < k; ++j) {
        std::size_t from = rx ? 0 : j;
        for (std::size_t l = from; l < k; ++l) {
            RatFn v = fam.gen(l).apply(rep.coeffs[j]);
            if (!v.is_zero()) {
                rep.witness =
                    MembershipWitness{MembershipWitness::Kind::Coefficient, j + 1, l + 1, v};
                return rep;
            }
        }
        if (!rx) {
            RatFn den(rep.coeffs[j].den());
            for (std::size_t l = 0; l < k; ++l) {
                RatFn v = fam.gen(l).apply(den);
                if (!v.is_zero()) {
                    rep.witness =
                        MembershipWitness{MembershipWitness::Kind::Denominator, j + 1, l + 1, v};
                    return rep;
                }
            }
        }
    }
    rep.member = true;
    rep.level = k + 1;
    for (std::size_t j = 0; j < k; ++j) {
        if (!rep.coeffs[j].is_zero()) {
            rep.level = j + 1;
            break;
        }
    }
    return rep;
}

}  // namespace

MembershipReport dj_membership(const Deriv& d, const Family& fam) {
    return membership_impl(d, fam, false);
}

MembershipReport rx_membership(const Deriv& d, const Family& fam) {
    return membership_impl(d, fam, true);
}

InclusionCert family_includes(const Family& big, const Family& small) {
    InclusionCert cert;
    std::size_t k = big.size(), m = small.size();
    if (!same_varset(big.varset(), small.varset())) {
        cert.reason = "varset mismatch";
        return cert;
    }
    if (m > k) {
        cert.reason = "small family is larger than big family";
        return cert;
    }
    std::size_t offset = k - m;
    for (std::size_t i = 0; i < m; ++i) {
        MembershipReport r = dj_membership(small.gen(i), big);
        std::size_t required = offset + i + 1;
        cert.required_levels.push_back(required);
        if (!r.member) {
            cert.memberships.push_back(std::move(r));
            cert.reason = "generator " + std::to_string(i + 1) + " of the small family is not a member";
            return cert;
        }
        if (r.level < required) {
            cert.reason = "generator " + std::to_string(i + 1) + " sits at level " +
                          std::to_string(r.level) + " < required " + std::to_string(required);
            cert.memberships.push_back(std::move(r));
            return cert;
        }
        cert.memberships.push_back(std::move(r));
    }
    // Tail coefficients must live over the tail's joint Frac-kernel and form
    // an invertible m x m matrix.
    RatMatrix tail(m, m, big.varset());
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const RatFn& f = cert.memberships[i].coeffs[offset + j];
            if (!big.annihilated_from(f, offset)) {
                cert.reason = "coefficient (" + std::to_string(i + 1) + "," +
                              std::to_string(offset + j + 1) +
                              ") is not killed by the tail generators";
                return cert;
            }
            tail.at(i, j) = f;
        }
    }
    if (symbolic_rank(tail) != m) {
        cert.reason = "tail coefficient matrix is singular over K(X)";
        return cert;
    }
    cert.holds = true;
    return cert;
}

bool family_equivalent(const Family& f1, const Family& f2) {
    if (f1.size() != f2.size()) return false;
    return family_includes(f1, f2).holds && family_includes(f2, f1).holds;
}

namespace {

// Writes each derivation as a vector over the monomials appearing in any
// coefficient; used to solve constant-coefficient span problems.
struct SpanBasis {
    std::vector<std::pair<std::size_t, Expo>> keys;  // (variable, monomial)
    std::map<std::pair<std::size_t, Expo>, std::size_t> index;

    explicit SpanBasis(const std::vector<Deriv>& ds) {
        for (const Deriv& d : ds)
            for (std::size_t v = 0; v < d.varset()->size(); ++v)
                for (const auto& [e, c] : d.coeff(v).terms()) index.emplace(std::make_pair(v, e), 0);
        for (auto& [key, idx] : index) {
            idx = keys.size();
            keys.push_back(key);
        }
    }

    RatVec vec(const Deriv& d) const {
        RatVec out(keys.size(), Rat(0));
        for (std::size_t v = 0; v < d.varset()->size(); ++v)
            for (const auto& [e, c] : d.coeff(v).terms()) {
                auto it = index.find(std::make_pair(v, e));
                if (it == index.end()) return RatVec();  // outside the span support
                out[it->second] = c;
            }
        return out;
    }
};

bool in_constant_span(const std::vector<Deriv>& basis, const Deriv& d) {
    SpanBasis sb(basis);
    RatVec target = sb.vec(d);
    if (target.empty() && !d.is_zero()) return false;
    if (d.is_zero()) return true;
    RatGrid m(sb.keys.size(), RatVec(basis.size(), Rat(0)));
    for (std::size_t j = 0; j < basis.size(); ++j) {
        RatVec col = sb.vec(basis[j]);
        for (std::size_t r = 0; r < sb.keys.size(); ++r) m[r][j] = col[r];
    }
    return rat_solve(std::move(m), std::move(target)).has_value();
}

}  // namespace

Family commuting_reduction(const std::vector<Deriv>& basis, long cert_cap, long substitution_cap) {
    if (basis.empty()) throw std::invalid_argument("commuting_reduction: empty basis");
    for (const Deriv& d : basis)
        if (!same_varset(d.varset(), basis[0].varset()))
            throw std::invalid_argument("commuting_reduction: varset mismatch");

    // Lie-algebra condition: brackets of basis elements lie in the span.
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j)
            if (!in_constant_span(basis, bracket(basis[i], basis[j])))
                throw std::invalid_argument(
                    "commuting_reduction: bracket (" + std::to_string(i + 1) + "," +
                    std::to_string(j + 1) + ") is not in the span of the basis");

    std::size_t k = symbolic_rank(coefficient_matrix(basis));
    if (k == 0) throw std::invalid_argument("commuting_reduction: zero span");

    // Greedy locally free subset of size k.
    std::vector<Deriv> sel;
    for (const Deriv& d : basis) {
        std::vector<Deriv> trial = sel;
        trial.push_back(d);
        if (symbolic_rank(coefficient_matrix(trial)) == trial.size()) sel = std::move(trial);
        if (sel.size() == k) break;
    }
    if (sel.size() != k)
        throw std::logic_error("commuting_reduction: rank extraction failed");

    auto rank_with = [&](std::size_t pos, const Deriv& repl) {
        std::vector<Deriv> trial = sel;
        trial[pos] = repl;
        return symbolic_rank(coefficient_matrix(trial)) == k;
    };

    for (long step = 0; step < substitution_cap; ++step) {
        std::optional<std::pair<std::size_t, std::size_t>> pending;
        Deriv b = Deriv::zero(basis[0].varset());
        for (std::size_t i = 0; i < k && !pending; ++i) {
            for (std::size_t j = i + 1; j < k && !pending; ++j) {
                Deriv br = bracket(sel[i], sel[j]);
                if (!br.is_zero()) {
                    pending = std::make_pair(i, j);
                    b = std::move(br);
                }
            }
        }
        if (!pending) return Family(sel, cert_cap);
        auto [i, j] = *pending;
        if (rank_with(j, b)) {
            sel[j] = std::move(b);
        } else if (rank_with(i, b)) {
            sel[i] = std::move(b);
        } else {
            // Heisenberg-style algebras block here: the bracket is dependent
            // on the rest of the selection through either slot.
            throw CapExceeded(
                "commuting_reduction: no rank-preserving replacement for surviving pair (" +
                std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
        }
    }
    throw CapExceeded("commuting_reduction: substitution cap exceeded");
}

CylPres cylinder_presentation(const Family& fam, const SliceSys& s) {
    CylPres out{s, Poly::constant(fam.varset(), Rat(1)), {}};
    const VarSetPtr& vs = fam.varset();
    std::vector<Poly> dens;
    for (std::size_t v : vs->non_param_indices()) {
        auto table = slice_expand(Poly::variable(vs, v), s);
        for (const auto& [alpha, c] : table) {
            const Poly& den = c.den();
            if (den.is_constant()) continue;
            bool seen = std::any_of(dens.begin(), dens.end(),
                                    [&](const Poly& p) { return p == den; });
            if (!seen) dens.push_back(den);
        }
        out.coord_table.emplace(v, std::move(table));
    }
    out.f = s.h;
    for (const Poly& d : dens) out.f *= d;

    // Invariants: denominators divide a power of f; expansions reconstruct.
    for (const auto& [v, table] : out.coord_table) {
        RatFn sum = RatFn::zero(vs);
        for (const auto& [alpha, c] : table) {
            if (!c.den().is_constant() && !divides_power(c.den(), out.f))
                throw std::logic_error("cylinder_presentation: denominator does not divide f^N");
            RatFn term = c;
            for (std::size_t i = 0; i < s.fam.size(); ++i) term = term * s.x[i].pow(alpha[i]);
            sum = sum + term;
        }
        if (sum != RatFn::variable(vs, v))
            throw std::logic_error("cylinder_presentation: reconstruction failed");
    }
    return out;
}

}  // namespace lnd
