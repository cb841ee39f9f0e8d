#include "lnd/degrees.hpp"

#include <algorithm>
#include <stdexcept>

namespace lnd {

WeightFn::WeightFn(VarSetPtr vs, std::map<std::size_t, long> base_weights,
                   std::vector<std::pair<std::size_t, long>> cylinder)
    : vs_(std::move(vs)), weights_(vs_->size(), 1), cyl_(std::move(cylinder)) {
    std::vector<bool> is_cyl(vs_->size(), false);
    for (const auto& [v, d] : cyl_) {
        if (v >= vs_->size()) throw std::invalid_argument("WeightFn: bad cylinder variable");
        if (d <= 0) throw std::invalid_argument("WeightFn: cylinder weight must be positive");
        if (is_cyl[v]) throw std::invalid_argument("WeightFn: duplicate cylinder variable");
        is_cyl[v] = true;
        weights_[v] = d;
    }
    for (const auto& [v, w] : base_weights) {
        if (v >= vs_->size()) throw std::invalid_argument("WeightFn: bad base variable");
        if (is_cyl[v]) throw std::invalid_argument("WeightFn: base weight on cylinder variable");
        if (w <= 0) throw std::invalid_argument("WeightFn: base weight must be positive");
        weights_[v] = w;
    }
}

long WeightFn::degree(const Poly& f) const {
    if (!same_varset(f.varset(), vs_)) throw std::invalid_argument("WeightFn: varset mismatch");
    return f.weighted_degree(weights_);
}

PreserveCheck is_degree_preserving(const Auto& a, const Auto& a_inv, const WeightFn& w) {
    if (!compose(a, a_inv).is_identity() || !compose(a_inv, a).is_identity())
        throw std::invalid_argument("is_degree_preserving: pair is not mutually inverse");
    PreserveCheck out;
    const VarSet& vs = *a.varset();
    for (int side = 0; side < 2; ++side) {
        const Auto& g = side == 0 ? a : a_inv;
        for (std::size_t v = 0; v < vs.size(); ++v) {
            if (vs.is_param(v)) continue;
            long limit = w.weight_of(v);
            long got = w.degree(g.image(v));
            if (got > limit) {
                out.preserving = false;
                out.witness_var = v;
                out.got = got;
                out.limit = limit;
                out.on_inverse = side == 1;
                return out;
            }
        }
    }
    return out;
}

WeightFn bounding_weights(const std::vector<std::pair<Auto, Auto>>& pairs, const VarSetPtr& vs,
                          const std::vector<std::size_t>& cylinder_order,
                          const std::map<std::size_t, long>& base_weights) {
    if (pairs.empty()) throw std::invalid_argument("bounding_weights: empty automorphism list");
    if (cylinder_order.empty()) throw std::invalid_argument("bounding_weights: empty cylinder");

    // Unitriangularity over the base: base variables fixed, the difference on
    // x_i uses only base variables and x_1..x_{i-1}.
    std::vector<bool> is_cyl(vs->size(), false);
    for (std::size_t v : cylinder_order) is_cyl[v] = true;
    auto check_input = [&](const Auto& g) {
        for (std::size_t v = 0; v < vs->size(); ++v)
            if (!is_cyl[v] && g.image(v) != Poly::variable(vs, v))
                throw std::invalid_argument("bounding_weights: input moves base variable '" +
                                            vs->name(v) + "'");
        std::vector<bool> allowed(vs->size(), false);
        for (std::size_t v = 0; v < vs->size(); ++v) allowed[v] = !is_cyl[v];
        for (std::size_t v : cylinder_order) {
            Poly diff = g.image(v) - Poly::variable(vs, v);
            for (std::size_t u = 0; u < vs->size(); ++u)
                if (!allowed[u] && diff.depends_on(u))
                    throw std::invalid_argument(
                        "bounding_weights: input not unitriangular in the cylinder order");
            allowed[v] = true;
        }
    };
    for (const auto& [g, gi] : pairs) {
        check_input(g);
        check_input(gi);
    }

    std::vector<std::pair<std::size_t, long>> cyl;
    for (std::size_t v : cylinder_order) {
        // Weights fixed so far; the pending cylinder variables cannot occur
        // in the differences below, so a placeholder weight 1 is inert.
        std::vector<std::pair<std::size_t, long>> partial = cyl;
        partial.emplace_back(v, 1);
        WeightFn wpart(vs, base_weights, partial);
        long d = 1;
        for (const auto& [g, gi] : pairs) {
            for (const Auto* side : {&g, &gi}) {
                Poly diff = side->image(v) - Poly::variable(vs, v);
                long deg = wpart.degree(diff);
                if (deg != kNegInfDeg) d = std::max(d, deg);
            }
        }
        cyl.emplace_back(v, d);
    }
    WeightFn w(vs, base_weights, cyl);
    for (const auto& [g, gi] : pairs) {
        if (!is_degree_preserving(g, gi, w).preserving)
            throw std::logic_error("bounding_weights: postcondition failed");
    }
    return w;
}

}  // namespace lnd
