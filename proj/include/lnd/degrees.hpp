#pragma once

#include <map>
#include <optional>
#include <vector>

#include "lnd/automorphism.hpp"
#include "lnd/poly.hpp"

namespace lnd {

// Weighted degree function on a cylinder-split ring: base variables carry
// positive base weights, the designated cylinder variables x_1..x_k carry
// weights d_i > 0. omega(f) = max over monomials of the weighted exponent
// sum; omega(0) = -inf; omega is multiplicative and subadditive.
class WeightFn {
public:
    WeightFn(VarSetPtr vs, std::map<std::size_t, long> base_weights,
             std::vector<std::pair<std::size_t, long>> cylinder);

    const VarSetPtr& varset() const { return vs_; }
    const std::vector<std::pair<std::size_t, long>>& cylinder() const { return cyl_; }
    long weight_of(std::size_t var) const { return weights_[var]; }

    long degree(const Poly& f) const;  // kNegInfDeg for 0

private:
    VarSetPtr vs_;
    std::vector<long> weights_;
    std::vector<std::pair<std::size_t, long>> cyl_;
};

struct PreserveCheck {
    bool preserving = true;
    std::size_t witness_var = 0;  // violating variable when !preserving
    long got = 0;
    long limit = 0;
    bool on_inverse = false;
};

// Checks omega(a*(v)) <= omega(v) and omega(a_inv*(v)) <= omega(v) on every
// variable; sufficient by multiplicativity and the max rule. The pair must
// be mutually inverse.
PreserveCheck is_degree_preserving(const Auto& a, const Auto& a_inv, const WeightFn& w);

// Builds cylinder weights left to right as d_i = max(1, omega(g*(x_i)-x_i))
// over every automorphism of every pair, using the already-fixed
// d_1..d_{i-1}. Every input must be unitriangular in the cylinder variables
// over the base (base variables fixed). The returned weight function makes
// every input pair degree-preserving.
WeightFn bounding_weights(const std::vector<std::pair<Auto, Auto>>& pairs,
                          const VarSetPtr& vs, const std::vector<std::size_t>& cylinder_order,
                          const std::map<std::size_t, long>& base_weights = {});

}  // namespace lnd
