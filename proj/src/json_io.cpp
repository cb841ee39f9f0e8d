#include "lnd/json_io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "lnd/parse.hpp"

namespace lnd {

namespace {

std::vector<std::string> string_list(const Json& j, const char* what) {
    if (!j.is_array()) throw SchemaError(std::string(what) + " must be an array of strings");
    std::vector<std::string> out;
    for (const auto& e : j) {
        if (!e.is_string()) throw SchemaError(std::string(what) + " must contain strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

}  // namespace

VarSetPtr varset_from_json(const Json& j) {
    if (!j.is_object()) throw SchemaError("expected an object with \"vars\"");
    if (!j.contains("vars")) throw SchemaError("missing \"vars\"");
    std::vector<std::string> names = string_list(j.at("vars"), "\"vars\"");
    std::vector<bool> flags(names.size(), false);
    if (j.contains("params")) {
        for (const std::string& p : string_list(j.at("params"), "\"params\"")) {
            names.push_back(p);
            flags.push_back(true);
        }
    }
    try {
        return VarSet::make(std::move(names), std::move(flags));
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
}

Json varset_to_json(const VarSetPtr& vs) {
    Json vars = Json::array(), params = Json::array();
    for (std::size_t i = 0; i < vs->size(); ++i)
        (vs->is_param(i) ? params : vars).push_back(vs->name(i));
    Json j;
    j["vars"] = std::move(vars);
    if (!params.empty()) j["params"] = std::move(params);
    return j;
}

namespace {

// Shared reader for coeffs/images maps.
std::vector<Poly> poly_map_from_json(const Json& j, const char* field, const VarSetPtr& vs,
                                     bool identity_default) {
    std::vector<Poly> out;
    out.reserve(vs->size());
    for (std::size_t i = 0; i < vs->size(); ++i)
        out.push_back(identity_default ? Poly::variable(vs, i) : Poly(vs));
    if (!j.contains(field)) return out;
    const Json& m = j.at(field);
    if (!m.is_object()) throw SchemaError(std::string("\"") + field + "\" must be an object");
    for (const auto& [key, val] : m.items()) {
        auto idx = vs->index_of(key);
        if (!idx) throw SchemaError("unknown variable '" + key + "' in \"" + field + "\"");
        if (!val.is_string()) throw SchemaError("expression for '" + key + "' must be a string");
        RatFn v = parse_expr(val.get<std::string>(), vs);
        if (!v.is_poly())
            throw SchemaError("expression for '" + key + "' must be polynomial");
        out[*idx] = v.as_poly();
    }
    return out;
}

}  // namespace

Deriv deriv_from_json(const Json& j) {
    return deriv_from_json(j, varset_from_json(j));
}

Deriv deriv_from_json(const Json& j, const VarSetPtr& ambient) {
    VarSetPtr vs = j.contains("vars") ? varset_from_json(j) : ambient;
    if (!same_varset(vs, ambient))
        throw SchemaError("generator varset differs from the ambient varset");
    try {
        return Deriv(ambient, poly_map_from_json(j, "coeffs", ambient, false));
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
}

Json deriv_to_json(const Deriv& d) {
    Json j = varset_to_json(d.varset());
    Json coeffs;
    for (std::size_t i = 0; i < d.varset()->size(); ++i)
        if (!d.coeff(i).is_zero()) coeffs[d.varset()->name(i)] = d.coeff(i).str();
    j["coeffs"] = std::move(coeffs);
    return j;
}

Auto auto_from_json(const Json& j) { return auto_from_json(j, varset_from_json(j)); }

Auto auto_from_json(const Json& j, const VarSetPtr& ambient) {
    VarSetPtr vs = j.contains("vars") ? varset_from_json(j) : ambient;
    if (!same_varset(vs, ambient))
        throw SchemaError("automorphism varset differs from the ambient varset");
    try {
        return Auto(ambient, poly_map_from_json(j, "images", ambient, true));
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
}

Json auto_to_json(const Auto& a) {
    Json j = varset_to_json(a.varset());
    Json images;
    for (std::size_t i = 0; i < a.varset()->size(); ++i) {
        if (a.varset()->is_param(i)) continue;
        if (a.image(i) != Poly::variable(a.varset(), i))
            images[a.varset()->name(i)] = a.image(i).str();
    }
    j["images"] = std::move(images);
    return j;
}

Family family_from_json(const Json& j, long cert_cap) {
    VarSetPtr vs = varset_from_json(j);
    if (!j.contains("generators") || !j.at("generators").is_array())
        throw SchemaError("family needs a \"generators\" array");
    std::vector<Deriv> gens;
    for (const auto& g : j.at("generators")) gens.push_back(deriv_from_json(g, vs));
    if (gens.empty()) throw SchemaError("family needs at least one generator");
    try {
        return Family(std::move(gens), cert_cap);
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
}

Json family_to_json(const Family& f) {
    Json j = varset_to_json(f.varset());
    Json gens = Json::array();
    for (std::size_t i = 0; i < f.size(); ++i) {
        Json g;
        Json coeffs;
        for (std::size_t v = 0; v < f.varset()->size(); ++v)
            if (!f.gen(i).coeff(v).is_zero()) coeffs[f.varset()->name(v)] = f.gen(i).coeff(v).str();
        g["coeffs"] = std::move(coeffs);
        gens.push_back(std::move(g));
    }
    j["generators"] = std::move(gens);
    return j;
}

WeightFn weight_from_json(const Json& j, const VarSetPtr& vs) {
    std::map<std::size_t, long> base;
    if (j.contains("base")) {
        for (const auto& [key, val] : j.at("base").items()) {
            auto idx = vs->index_of(key);
            if (!idx) throw SchemaError("unknown base variable '" + key + "'");
            base[*idx] = val.get<long>();
        }
    }
    std::vector<std::pair<std::size_t, long>> cyl;
    if (j.contains("cylinder")) {
        for (const auto& e : j.at("cylinder")) {
            if (!e.is_array() || e.size() != 2)
                throw SchemaError("\"cylinder\" entries must be [name, weight] pairs");
            auto idx = vs->index_of(e.at(0).get<std::string>());
            if (!idx) throw SchemaError("unknown cylinder variable");
            cyl.emplace_back(*idx, e.at(1).get<long>());
        }
    }
    try {
        return WeightFn(vs, std::move(base), std::move(cyl));
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
}

Json weight_to_json(const WeightFn& w) {
    Json j;
    Json base;
    std::vector<bool> is_cyl(w.varset()->size(), false);
    for (const auto& [v, d] : w.cylinder()) is_cyl[v] = true;
    for (std::size_t i = 0; i < w.varset()->size(); ++i)
        if (!is_cyl[i]) base[w.varset()->name(i)] = w.weight_of(i);
    j["base"] = std::move(base);
    Json cyl = Json::array();
    for (const auto& [v, d] : w.cylinder()) cyl.push_back(Json::array({w.varset()->name(v), d}));
    j["cylinder"] = std::move(cyl);
    return j;
}

Json membership_to_json(const MembershipReport& r) {
    Json j;
    j["member"] = r.member;
    if (r.member) j["level"] = r.level;
    if (!r.coeffs.empty()) {
        Json cs = Json::array();
        for (const RatFn& c : r.coeffs) cs.push_back(c.str());
        j["coeffs"] = std::move(cs);
    }
    if (r.witness) {
        Json w;
        switch (r.witness->kind) {
            case MembershipWitness::Kind::Span: w["kind"] = "span"; break;
            case MembershipWitness::Kind::Coefficient: w["kind"] = "coefficient"; break;
            case MembershipWitness::Kind::Denominator: w["kind"] = "denominator"; break;
        }
        if (r.witness->j) w["j"] = r.witness->j;
        if (r.witness->l) w["l"] = r.witness->l;
        if (r.witness->value) w["value"] = r.witness->value->str();
        j["witness"] = std::move(w);
    }
    return j;
}

Json inclusion_to_json(const InclusionCert& c) {
    Json j;
    j["holds"] = c.holds;
    if (!c.reason.empty()) j["reason"] = c.reason;
    Json ms = Json::array();
    for (const auto& m : c.memberships) ms.push_back(membership_to_json(m));
    j["memberships"] = std::move(ms);
    j["required_levels"] = c.required_levels;
    return j;
}

Poly transplant(const Poly& p, const VarSetPtr& to) {
    const VarSetPtr& from = p.varset();
    std::vector<Poly> images;
    images.reserve(from->size());
    for (std::size_t i = 0; i < from->size(); ++i) {
        auto idx = to->index_of(from->name(i));
        if (idx) {
            images.push_back(Poly::variable(to, *idx));
        } else {
            if (p.depends_on(i))
                throw SchemaError("variable '" + from->name(i) + "' missing in target varset");
            images.push_back(Poly(to));
        }
    }
    return p.substitute(images);
}

Deriv transplant(const Deriv& d, const VarSetPtr& to) {
    std::vector<Poly> coeffs(to->size(), Poly(to));
    const VarSetPtr& from = d.varset();
    for (std::size_t i = 0; i < from->size(); ++i) {
        if (d.coeff(i).is_zero()) continue;
        auto idx = to->index_of(from->name(i));
        if (!idx) throw SchemaError("variable '" + from->name(i) + "' missing in target varset");
        coeffs[*idx] = transplant(d.coeff(i), to);
    }
    return Deriv(to, std::move(coeffs));
}

VarSetPtr extend_with_param(const VarSetPtr& vs, const std::string& name) {
    if (vs->index_of(name))
        throw SchemaError("variable '" + name + "' already exists");
    std::vector<std::string> names = vs->names();
    std::vector<bool> flags;
    flags.reserve(names.size() + 1);
    for (std::size_t i = 0; i < vs->size(); ++i) flags.push_back(vs->is_param(i));
    names.push_back(name);
    flags.push_back(true);
    return VarSet::make(std::move(names), std::move(flags));
}

Deriv specialize_param(const Deriv& d, std::size_t param, const Rat& t) {
    const VarSetPtr& vs = d.varset();
    if (!vs->is_param(param)) throw std::invalid_argument("specialize_param: not a parameter");
    std::vector<Poly> images;
    images.reserve(vs->size());
    for (std::size_t i = 0; i < vs->size(); ++i)
        images.push_back(i == param ? Poly::constant(vs, t) : Poly::variable(vs, i));
    std::vector<Poly> coeffs;
    coeffs.reserve(vs->size());
    for (std::size_t i = 0; i < vs->size(); ++i) coeffs.push_back(d.coeff(i).substitute(images));
    return Deriv(vs, std::move(coeffs));
}

Json load_json_file(const std::string& path) {
    try {
        if (path == "-") {
            return Json::parse(std::cin);
        }
        std::ifstream in(path);
        if (!in) throw SchemaError("cannot open file: " + path);
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError("malformed JSON in " + path + ": " + e.what());
    }
}

}  // namespace lnd
