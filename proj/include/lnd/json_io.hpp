#pragma once

#include <json.hpp>

#include "lnd/degrees.hpp"
#include "lnd/djlike.hpp"

namespace lnd {

using Json = nlohmann::ordered_json;

// Schema errors (malformed JSON documents, unknown fields, bad names).
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// {"vars": [names...], "params": [names...]} — full order is vars then params.
VarSetPtr varset_from_json(const Json& j);
Json varset_to_json(const VarSetPtr& vs);

// {"vars": ..., "params": ..., "coeffs": {"var": "expr", ...}} — omitted
// variables have coefficient 0. Coefficients must be polynomial.
Deriv deriv_from_json(const Json& j);
// Variant that inherits an ambient varset when "vars" is absent.
Deriv deriv_from_json(const Json& j, const VarSetPtr& ambient);
Json deriv_to_json(const Deriv& d);

// {"vars": ..., "params": ..., "images": {"var": "expr", ...}} — omitted
// variables map to themselves.
Auto auto_from_json(const Json& j);
Auto auto_from_json(const Json& j, const VarSetPtr& ambient);
Json auto_to_json(const Auto& a);

// {"vars": ..., "params": ..., "generators": [DerivJSON, ...]} — order
// significant; generator entries may omit "vars"/"params".
Family family_from_json(const Json& j, long cert_cap = kDefaultCap);
Json family_to_json(const Family& f);

// {"base": {"var": weight, ...}, "cylinder": [["var", d], ...]}.
WeightFn weight_from_json(const Json& j, const VarSetPtr& vs);
Json weight_to_json(const WeightFn& w);

Json membership_to_json(const MembershipReport& r);
Json inclusion_to_json(const InclusionCert& c);

// Moves a value into a varset that contains (by name) every variable the
// value uses; parameter flags must agree on common names.
Poly transplant(const Poly& p, const VarSetPtr& to);
Deriv transplant(const Deriv& d, const VarSetPtr& to);

// New varset with an extra parameter variable appended.
VarSetPtr extend_with_param(const VarSetPtr& vs, const std::string& name);

// Substitutes the rational t for the given parameter variable.
Deriv specialize_param(const Deriv& d, std::size_t param, const Rat& t);

Json load_json_file(const std::string& path);  // "-" reads stdin

}  // namespace lnd
