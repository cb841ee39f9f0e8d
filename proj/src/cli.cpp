#include "lnd/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "lnd/json_io.hpp"
#include "lnd/parse.hpp"

namespace lnd {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Args {
    std::vector<std::string> positional;
    std::map<std::string, std::string> flags;

    static Args parse(const std::vector<std::string>& raw, std::size_t from,
                      const std::vector<std::string>& known_flags) {
        Args a;
        for (std::size_t i = from; i < raw.size(); ++i) {
            const std::string& s = raw[i];
            if (s.rfind("--", 0) == 0) {
                std::string name = s.substr(2);
                if (std::find(known_flags.begin(), known_flags.end(), name) == known_flags.end())
                    throw UsageError("unknown flag --" + name);
                if (i + 1 >= raw.size()) throw UsageError("flag --" + name + " needs a value");
                a.flags[name] = raw[++i];
            } else {
                a.positional.push_back(s);
            }
        }
        return a;
    }

    const std::string& pos(std::size_t i, const char* what) const {
        if (i >= positional.size()) throw UsageError(std::string("missing argument: ") + what);
        return positional[i];
    }

    long flag_long(const std::string& name, long dflt) const {
        auto it = flags.find(name);
        if (it == flags.end()) return dflt;
        return std::stol(it->second);
    }
};

long parse_cap(const Args& a, const char* name, long dflt) {
    long cap = a.flag_long(name, dflt);
    if (cap < 1) throw UsageError(std::string(name) + " must be >= 1");
    return cap;
}

std::vector<std::size_t> order_from_flag(const std::string& spec, const VarSetPtr& vs) {
    std::vector<std::size_t> order;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto idx = vs->index_of(item);
        if (!idx) throw UsageError("unknown variable '" + item + "' in order");
        order.push_back(*idx);
    }
    return order;
}

std::vector<std::size_t> default_order(const VarSetPtr& vs) { return vs->non_param_indices(); }

void print_json(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

// ---------------------------------------------------------------------------
// Fixture corpus

struct FixtureFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& msg) {
    if (!ok) throw FixtureFailure(msg);
}

std::string get_str(const Json& j, const char* field) {
    if (!j.contains(field)) throw SchemaError(std::string("fixture missing \"") + field + "\"");
    return j.at(field).get<std::string>();
}

Deriv fixture_deriv(const Json& j, const char* field) {
    if (!j.contains(field)) throw SchemaError(std::string("fixture missing \"") + field + "\"");
    return deriv_from_json(j.at(field));
}

// Composes exp of the factor derivations as classical function composition
// in listed order: the last listed factor acts first on points.
Auto compose_factor_exps(const std::vector<Deriv>& factors, long cap) {
    std::optional<Auto> acc;
    for (const Deriv& f : factors) {
        LndCert c = certify_lnd(f, cap);
        Auto e = exp_derivation(f, c);
        acc = acc ? compose(e, *acc) : e;
    }
    return *acc;
}

void check_images(const Auto& a, const Json& images) {
    for (const auto& [name, val] : images.items()) {
        auto idx = a.varset()->index_of(name);
        expect(idx.has_value(), "unknown image variable " + name);
        std::string got = a.image(*idx).str();
        expect(got == val.get<std::string>(),
               "image of " + name + ": got \"" + got + "\", want \"" + val.get<std::string>() + "\"");
    }
}

void run_fixture(const Json& fx) {
    std::string kind = get_str(fx, "kind");
    const Json& want = fx.contains("expect") ? fx.at("expect") : Json::object();

    if (kind == "lnd-cert") {
        Deriv d = fixture_deriv(fx, "deriv");
        long cap = fx.value("cap", kDefaultCap);
        LndCert c = certify_lnd(d, cap);
        std::string got = c.str(*d.varset());
        expect(got == get_str(want, "cert"),
               "certificate: got " + got + ", want " + get_str(want, "cert"));
    } else if (kind == "apply-deriv") {
        Deriv d = fixture_deriv(fx, "deriv");
        RatFn v = d.apply(parse_expr(get_str(fx, "expr"), d.varset()));
        expect(v.str() == get_str(want, "value"),
               "value: got " + v.str() + ", want " + get_str(want, "value"));
    } else if (kind == "nilpotency") {
        Deriv d = fixture_deriv(fx, "deriv");
        Poly f = parse_poly(get_str(fx, "expr"), d.varset());
        auto m = nilpotency_index(d, f, fx.value("cap", kDefaultCap));
        if (want.contains("overflow") && want.at("overflow").get<bool>()) {
            expect(!m.has_value(), "expected overflow");
        } else {
            expect(m.has_value(), "unexpected overflow");
            expect(*m == want.at("index").get<long>(),
                   "index: got " + std::to_string(*m));
        }
    } else if (kind == "exp-param") {
        Deriv d = fixture_deriv(fx, "deriv");
        VarSetPtr ext = extend_with_param(d.varset(), get_str(fx, "param"));
        Deriv dt = transplant(d, ext).scale(Poly::variable(ext, ext->size() - 1));
        LndCert c = certify_lnd(dt, fx.value("cap", kDefaultCap));
        expect(c.certified(), "t-scaled derivation not certified");
        check_images(exp_derivation(dt, c), want.at("images"));
    } else if (kind == "exp") {
        Deriv d = fixture_deriv(fx, "deriv");
        LndCert c = certify_lnd(d, fx.value("cap", kDefaultCap));
        expect(c.certified(), "not certified");
        check_images(exp_derivation(d, c), want.at("images"));
    } else if (kind == "log-roundtrip") {
        Deriv d = fixture_deriv(fx, "deriv");
        LndCert c = certify_lnd(d, fx.value("cap", kDefaultCap));
        expect(c.certified(), "not certified");
        Auto a = exp_derivation(d, c);
        expect(log_automorphism(a, fx.value("cap", kDefaultCap)) == d, "log(exp(d)) != d");
    } else if (kind == "one-parameter-factorization") {
        Deriv d = fixture_deriv(fx, "deriv");
        std::vector<Deriv> factors;
        for (const auto& f : fx.at("factors")) factors.push_back(deriv_from_json(f));
        auto pidx = d.varset()->index_of(get_str(fx, "param"));
        expect(pidx.has_value(), "missing parameter variable");
        LndCert cd = certify_lnd(d, kDefaultCap);
        for (const auto& tj : fx.at("ts")) {
            Rat t = rat_parse(tj.get<std::string>());
            Auto lhs = one_parameter(d, cd, t);
            std::vector<Deriv> fs;
            for (const Deriv& f : factors) fs.push_back(specialize_param(f, *pidx, t));
            Auto rhs = compose_factor_exps(fs, kDefaultCap);
            expect(lhs == rhs, "factorization fails at t = " + rat_str(t));
        }
    } else if (kind == "one-parameter-degree") {
        Deriv d = fixture_deriv(fx, "deriv");
        LndCert c = certify_lnd(d, kDefaultCap);
        const Json& pairs = want.at("degrees");
        for (const auto& e : pairs) {
            Rat t = rat_parse(e.at(0).get<std::string>());
            long expect_deg = e.at(1).get<long>();
            Auto a = one_parameter(d, c, t);
            Auto ai = one_parameter(d, c, Rat(-t));
            long got = automorphism_degree(a, ai);
            expect(got == expect_deg, "degree at t=" + rat_str(t) + ": got " + std::to_string(got));
        }
    } else if (kind == "one-parameter-apply") {
        Deriv d = fixture_deriv(fx, "deriv");
        LndCert c = certify_lnd(d, kDefaultCap);
        Rat t = rat_parse(get_str(fx, "t"));
        Auto a = one_parameter(d, c, t);
        RatFn v = a.apply(parse_expr(get_str(fx, "expr"), d.varset()));
        if (want.contains("value"))
            expect(v.str() == get_str(want, "value"), "value: got " + v.str());
        if (want.contains("degree"))
            expect(v.num().total_degree() == want.at("degree").get<long>(),
                   "degree: got " + degree_str(v.num().total_degree()));
    } else if (kind == "exp-image") {
        Deriv d = fixture_deriv(fx, "deriv");
        LndCert c = certify_lnd(d, fx.value("cap", kDefaultCap));
        expect(c.certified(), "not certified");
        Auto a = exp_derivation(d, c);
        RatFn v = a.apply(parse_expr(get_str(fx, "expr"), d.varset()));
        expect(v.str() == get_str(want, "value"),
               "value: got " + v.str() + ", want " + get_str(want, "value"));
    } else if (kind == "auto-degree") {
        Deriv d = fixture_deriv(fx, "deriv");
        LndCert c = certify_lnd(d, fx.value("cap", kDefaultCap));
        Auto a = exp_derivation(d, c);
        Auto ai = exp_derivation(-d, c);
        long got = automorphism_degree(a, ai);
        expect(got == want.at("degree").get<long>(), "degree: got " + std::to_string(got));
    } else if (kind == "dj-member" || kind == "rx-member") {
        Deriv d = fixture_deriv(fx, "deriv");
        Family fam = family_from_json(fx.at("family"));
        MembershipReport r =
            kind == "dj-member" ? dj_membership(d, fam) : rx_membership(d, fam);
        expect(r.member == want.at("member").get<bool>(),
               std::string("member: got ") + (r.member ? "true" : "false"));
        if (r.member && want.contains("level"))
            expect(r.level == want.at("level").get<std::size_t>(),
                   "level: got " + std::to_string(r.level));
        if (want.contains("coeffs")) {
            const Json& cs = want.at("coeffs");
            expect(cs.size() == r.coeffs.size(), "coefficient count");
            for (std::size_t i = 0; i < r.coeffs.size(); ++i)
                expect(r.coeffs[i].str() == cs.at(i).get<std::string>(),
                       "coeff " + std::to_string(i + 1) + ": got " + r.coeffs[i].str());
        }
    } else if (kind == "slices") {
        Family fam = family_from_json(fx.at("family"));
        SliceSys s = build_slice_system(fam, fx.value("degree_cap", kDefaultDegreeCap));
        if (want.contains("y")) {
            const Json& ys = want.at("y");
            expect(ys.size() == s.y.size(), "slice count");
            for (std::size_t i = 0; i < s.y.size(); ++i)
                expect(s.y[i].str() == ys.at(i).get<std::string>(),
                       "y" + std::to_string(i + 1) + ": got " + s.y[i].str());
        }
        if (want.contains("x")) {
            const Json& xs = want.at("x");
            for (std::size_t i = 0; i < s.x.size(); ++i)
                expect(s.x[i].str() == xs.at(i).get<std::string>(),
                       "x" + std::to_string(i + 1) + ": got " + s.x[i].str());
        }
        if (want.contains("h"))
            expect(s.h.str() == get_str(want, "h"), "h: got " + s.h.str());
    } else if (kind == "cylinder") {
        Family fam = family_from_json(fx.at("family"));
        SliceSys s = build_slice_system(fam, fx.value("degree_cap", kDefaultDegreeCap));
        CylPres cp = cylinder_presentation(fam, s);
        if (want.contains("f"))
            expect(cp.f.str() == get_str(want, "f"), "f: got " + cp.f.str());
        if (want.contains("table")) {
            for (const auto& [vname, entries] : want.at("table").items()) {
                auto idx = fam.varset()->index_of(vname);
                expect(idx.has_value(), "unknown variable " + vname);
                const auto& got = cp.coord_table.at(*idx);
                for (const auto& [alpha_s, cval] : entries.items()) {
                    Expo alpha;
                    std::stringstream ss(alpha_s);
                    std::string part;
                    while (std::getline(ss, part, ','))
                        alpha.push_back(static_cast<std::uint32_t>(std::stoul(part)));
                    auto it = got.find(alpha);
                    expect(it != got.end(), "missing coefficient at (" + alpha_s + ")");
                    expect(it->second.str() == cval.get<std::string>(),
                           "coefficient (" + alpha_s + "): got " + it->second.str());
                }
            }
        }
    } else if (kind == "family-include") {
        Family big = family_from_json(fx.at("big"));
        Family small = family_from_json(fx.at("small"));
        InclusionCert c = family_includes(big, small);
        expect(c.holds == want.at("holds").get<bool>(),
               std::string("holds: got ") + (c.holds ? "true" : "false") +
                   (c.reason.empty() ? "" : " (" + c.reason + ")"));
    } else if (kind == "family-equal") {
        Family f1 = family_from_json(fx.at("f1"));
        Family f2 = family_from_json(fx.at("f2"));
        bool eq = family_equivalent(f1, f2);
        expect(eq == want.at("equal").get<bool>(), std::string("equal: got ") + (eq ? "true" : "false"));
    } else if (kind == "weights") {
        VarSetPtr vs = varset_from_json(fx);
        std::vector<std::pair<Auto, Auto>> pairs;
        std::vector<std::size_t> order;
        for (const auto& name : fx.at("order")) {
            auto idx = vs->index_of(name.get<std::string>());
            expect(idx.has_value(), "unknown cylinder variable");
            order.push_back(*idx);
        }
        std::vector<std::size_t> full = default_order(vs);
        for (const auto& aj : fx.at("autos")) {
            Auto a = auto_from_json(aj, vs);
            pairs.emplace_back(a, triangular_inverse(a, full));
        }
        std::map<std::size_t, long> base;
        if (fx.contains("base"))
            for (const auto& [k, v] : fx.at("base").items()) base[*vs->index_of(k)] = v.get<long>();
        WeightFn w = bounding_weights(pairs, vs, order, base);
        const Json& ds = want.at("d");
        expect(ds.size() == w.cylinder().size(), "cylinder count");
        for (std::size_t i = 0; i < w.cylinder().size(); ++i) {
            expect(vs->name(w.cylinder()[i].first) == ds.at(i).at(0).get<std::string>(),
                   "cylinder variable order");
            expect(w.cylinder()[i].second == ds.at(i).at(1).get<long>(),
                   "d for " + vs->name(w.cylinder()[i].first) + ": got " +
                       std::to_string(w.cylinder()[i].second));
        }
        for (const auto& [a, ai] : pairs)
            expect(is_degree_preserving(a, ai, w).preserving, "postcondition failed");
    } else if (kind == "bch") {
        Deriv d1 = fixture_deriv(fx, "d1");
        Deriv d2 = fixture_deriv(fx, "d2");
        LndCert c1 = certify_lnd(d1, kDefaultCap), c2 = certify_lnd(d2, kDefaultCap);
        Deriv z = bch(d1, d2, c1, c2, fx.value("cap", kDefaultCap));
        Deriv expectz = fixture_deriv(fx.at("expect"), "result");
        expect(z == expectz, "bch mismatch: got " + deriv_to_json(z).dump());
    } else if (kind == "commutator-log") {
        Deriv d1 = fixture_deriv(fx, "d1");
        Deriv d2 = fixture_deriv(fx, "d2");
        LndCert c1 = certify_lnd(d1, kDefaultCap), c2 = certify_lnd(d2, kDefaultCap);
        CommutatorLog cl = group_commutator_log(d1, d2, c1, c2, fx.value("cap", kDefaultCap));
        if (want.contains("log")) {
            Deriv expectd = fixture_deriv(want, "log");
            expect(cl.log == expectd, "log mismatch");
        }
        if (want.contains("equals_bracket"))
            expect(cl.equal == want.at("equals_bracket").get<bool>(), "bracket comparison");
    } else if (kind == "gcd") {
        VarSetPtr vs = varset_from_json(fx);
        Poly p = parse_poly(get_str(fx, "p"), vs);
        Poly q = parse_poly(get_str(fx, "q"), vs);
        Poly g = poly_gcd(p, q);
        expect(g.str() == get_str(want, "gcd"), "gcd: got " + g.str());
    } else if (kind == "evaluate") {
        VarSetPtr vs = varset_from_json(fx);
        RatFn f = parse_expr(get_str(fx, "expr"), vs);
        std::vector<Rat> point(vs->size(), Rat(0));
        for (const auto& [k, v] : fx.at("point").items()) {
            auto idx = vs->index_of(k);
            expect(idx.has_value(), "unknown point variable " + k);
            point[*idx] = rat_parse(v.get<std::string>());
        }
        Rat v = f.evaluate(point);
        expect(rat_str(v) == get_str(want, "value"), "value: got " + rat_str(v));
    } else {
        throw SchemaError("unknown fixture kind '" + kind + "'");
    }
}

// ---------------------------------------------------------------------------
// Subcommands

using Handler = std::function<int(const Args&, std::ostream&, std::ostream&)>;

int cmd_check_lnd(const Args& a, std::ostream& out, std::ostream&) {
    Deriv d = deriv_from_json(load_json_file(a.pos(0, "deriv.json")));
    LndCert c = certify_lnd(d, parse_cap(a, "cap", kDefaultCap));
    out << c.str(*d.varset()) << "\n";
    return c.certified() ? 0 : 3;
}

int cmd_bracket(const Args& a, std::ostream& out, std::ostream&) {
    Deriv d1 = deriv_from_json(load_json_file(a.pos(0, "d1.json")));
    Deriv d2 = deriv_from_json(load_json_file(a.pos(1, "d2.json")));
    print_json(out, deriv_to_json(bracket(d1, d2)));
    return 0;
}

int cmd_exp(const Args& a, std::ostream& out, std::ostream&) {
    Deriv d = deriv_from_json(load_json_file(a.pos(0, "deriv.json")));
    if (auto it = a.flags.find("param"); it != a.flags.end()) {
        VarSetPtr ext = extend_with_param(d.varset(), it->second);
        d = transplant(d, ext).scale(Poly::variable(ext, ext->size() - 1));
    }
    if (auto it = a.flags.find("scale"); it != a.flags.end()) d = d.scale(rat_parse(it->second));
    LndCert c = certify_lnd(d, parse_cap(a, "cap", kDefaultCap));
    if (!c.certified()) {
        out << c.str(*d.varset()) << "\n";
        return 3;
    }
    print_json(out, auto_to_json(exp_derivation(d, c)));
    return 0;
}

int cmd_log(const Args& a, std::ostream& out, std::ostream&) {
    Auto x = auto_from_json(load_json_file(a.pos(0, "auto.json")));
    print_json(out, deriv_to_json(log_automorphism(x, parse_cap(a, "cap", kDefaultCap))));
    return 0;
}

int cmd_bch(const Args& a, std::ostream& out, std::ostream&) {
    Deriv d1 = deriv_from_json(load_json_file(a.pos(0, "d1.json")));
    Deriv d2 = deriv_from_json(load_json_file(a.pos(1, "d2.json")));
    long cap = parse_cap(a, "cap", kDefaultCap);
    LndCert c1 = certify_lnd(d1, cap), c2 = certify_lnd(d2, cap);
    if (!c1.certified() || !c2.certified()) throw CapExceeded("bch: input not certified LND");
    print_json(out, deriv_to_json(bch(d1, d2, c1, c2, cap)));
    return 0;
}

int cmd_commutator_log(const Args& a, std::ostream& out, std::ostream&) {
    Deriv d1 = deriv_from_json(load_json_file(a.pos(0, "d1.json")));
    Deriv d2 = deriv_from_json(load_json_file(a.pos(1, "d2.json")));
    long cap = parse_cap(a, "cap", kDefaultCap);
    LndCert c1 = certify_lnd(d1, cap), c2 = certify_lnd(d2, cap);
    if (!c1.certified() || !c2.certified())
        throw CapExceeded("commutator-log: input not certified LND");
    CommutatorLog cl = group_commutator_log(d1, d2, c1, c2, cap);
    Json j;
    j["log"] = deriv_to_json(cl.log);
    j["bracket"] = deriv_to_json(cl.lie_bracket);
    j["equal"] = cl.equal;
    print_json(out, j);
    return 0;
}

int cmd_auto_apply(const Args& a, std::ostream& out, std::ostream&) {
    Auto x = auto_from_json(load_json_file(a.pos(0, "auto.json")));
    RatFn v = x.apply(parse_expr(a.pos(1, "expr"), x.varset()));
    out << v.str() << "\n";
    return 0;
}

int cmd_auto_compose(const Args& a, std::ostream& out, std::ostream&) {
    Auto x = auto_from_json(load_json_file(a.pos(0, "a.json")));
    Auto y = auto_from_json(load_json_file(a.pos(1, "b.json")));
    print_json(out, auto_to_json(compose(x, y)));
    return 0;
}

std::vector<std::size_t> order_for(const Args& a, const VarSetPtr& vs) {
    if (auto it = a.flags.find("order"); it != a.flags.end())
        return order_from_flag(it->second, vs);
    return default_order(vs);
}

int cmd_auto_inverse(const Args& a, std::ostream& out, std::ostream&) {
    Auto x = auto_from_json(load_json_file(a.pos(0, "auto.json")));
    print_json(out, auto_to_json(triangular_inverse(x, order_for(a, x.varset()))));
    return 0;
}

int cmd_auto_degree(const Args& a, std::ostream& out, std::ostream&) {
    Auto x = auto_from_json(load_json_file(a.pos(0, "auto.json")));
    Auto inv = a.positional.size() > 1
                   ? auto_from_json(load_json_file(a.pos(1, "inverse.json")))
                   : triangular_inverse(x, order_for(a, x.varset()));
    out << automorphism_degree(x, inv) << "\n";
    return 0;
}

int cmd_slices(const Args& a, std::ostream& out, std::ostream&) {
    Family fam = family_from_json(load_json_file(a.pos(0, "family.json")),
                                  parse_cap(a, "cap", kDefaultCap));
    SliceSys s = build_slice_system(fam, parse_cap(a, "degree-cap", kDefaultDegreeCap));
    Json j;
    Json ys = Json::array(), xs = Json::array();
    for (const Poly& y : s.y) ys.push_back(y.str());
    for (const RatFn& x : s.x) xs.push_back(x.str());
    j["y"] = std::move(ys);
    j["x"] = std::move(xs);
    j["h"] = s.h.str();
    print_json(out, j);
    return 0;
}

int cmd_project(const Args& a, std::ostream& out, std::ostream&) {
    Family fam = family_from_json(load_json_file(a.pos(0, "family.json")),
                                  parse_cap(a, "cap", kDefaultCap));
    SliceSys s = build_slice_system(fam, parse_cap(a, "degree-cap", kDefaultDegreeCap));
    RatFn g = parse_expr(a.pos(1, "expr"), fam.varset());
    out << kernel_project(g, s).str() << "\n";
    return 0;
}

std::string expo_key(const Expo& e) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(e[i]);
    }
    return s;
}

int cmd_expand(const Args& a, std::ostream& out, std::ostream&) {
    Family fam = family_from_json(load_json_file(a.pos(0, "family.json")),
                                  parse_cap(a, "cap", kDefaultCap));
    SliceSys s = build_slice_system(fam, parse_cap(a, "degree-cap", kDefaultDegreeCap));
    Poly g = parse_poly(a.pos(1, "expr"), fam.varset());
    Json j;
    for (const auto& [alpha, c] : slice_expand(g, s)) j[expo_key(alpha)] = c.str();
    print_json(out, j);
    return 0;
}

int cmd_dj_member(const Args& a, std::ostream& out, std::ostream&) {
    Deriv d = deriv_from_json(load_json_file(a.pos(0, "deriv.json")));
    Family fam = family_from_json(load_json_file(a.pos(1, "family.json")),
                                  parse_cap(a, "cap", kDefaultCap));
    MembershipReport r = dj_membership(d, fam);
    print_json(out, membership_to_json(r));
    return r.member ? 0 : 1;
}

int cmd_rx_member(const Args& a, std::ostream& out, std::ostream&) {
    Deriv d = deriv_from_json(load_json_file(a.pos(0, "deriv.json")));
    Family fam = family_from_json(load_json_file(a.pos(1, "family.json")),
                                  parse_cap(a, "cap", kDefaultCap));
    MembershipReport r = rx_membership(d, fam);
    print_json(out, membership_to_json(r));
    return r.member ? 0 : 1;
}

int cmd_family_include(const Args& a, std::ostream& out, std::ostream&) {
    Family big = family_from_json(load_json_file(a.pos(0, "big.json")),
                                  parse_cap(a, "cap", kDefaultCap));
    Family small = family_from_json(load_json_file(a.pos(1, "small.json")),
                                    parse_cap(a, "cap", kDefaultCap));
    InclusionCert c = family_includes(big, small);
    print_json(out, inclusion_to_json(c));
    return c.holds ? 0 : 1;
}

int cmd_family_equal(const Args& a, std::ostream& out, std::ostream&) {
    Family f1 = family_from_json(load_json_file(a.pos(0, "f1.json")),
                                 parse_cap(a, "cap", kDefaultCap));
    Family f2 = family_from_json(load_json_file(a.pos(1, "f2.json")),
                                 parse_cap(a, "cap", kDefaultCap));
    bool eq = family_equivalent(f1, f2);
    Json j;
    j["equal"] = eq;
    print_json(out, j);
    return eq ? 0 : 1;
}

int cmd_reduce_commuting(const Args& a, std::ostream& out, std::ostream&) {
    Json j = load_json_file(a.pos(0, "basis.json"));
    VarSetPtr vs = varset_from_json(j);
    if (!j.contains("basis") || !j.at("basis").is_array())
        throw SchemaError("reduce-commuting needs a \"basis\" array");
    std::vector<Deriv> basis;
    for (const auto& g : j.at("basis")) basis.push_back(deriv_from_json(g, vs));
    Family fam = commuting_reduction(basis, parse_cap(a, "cap", kDefaultCap),
                                     parse_cap(a, "substitution-cap", kDefaultSubstitutionCap));
    print_json(out, family_to_json(fam));
    return 0;
}

int cmd_cylinder(const Args& a, std::ostream& out, std::ostream&) {
    Family fam = family_from_json(load_json_file(a.pos(0, "family.json")),
                                  parse_cap(a, "cap", kDefaultCap));
    SliceSys s = build_slice_system(fam, parse_cap(a, "degree-cap", kDefaultDegreeCap));
    CylPres cp = cylinder_presentation(fam, s);
    Json j;
    j["f"] = cp.f.str();
    j["h"] = s.h.str();
    Json table;
    for (const auto& [v, entries] : cp.coord_table) {
        Json row;
        for (const auto& [alpha, c] : entries) row[expo_key(alpha)] = c.str();
        table[fam.varset()->name(v)] = std::move(row);
    }
    j["table"] = std::move(table);
    print_json(out, j);
    return 0;
}

int cmd_weights(const Args& a, std::ostream& out, std::ostream&) {
    if (a.positional.empty()) throw UsageError("weights needs at least one automorphism file");
    auto it = a.flags.find("order");
    if (it == a.flags.end()) throw UsageError("weights needs --order");
    std::vector<Auto> autos;
    for (const std::string& path : a.positional)
        autos.push_back(auto_from_json(load_json_file(path)));
    const VarSetPtr& vs = autos[0].varset();
    for (const Auto& x : autos)
        if (!same_varset(x.varset(), vs)) throw UsageError("weights: varset mismatch across inputs");
    std::vector<std::size_t> order = order_from_flag(it->second, vs);
    std::map<std::size_t, long> base;
    if (auto bit = a.flags.find("base"); bit != a.flags.end()) {
        std::stringstream ss(bit->second);
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto eq = item.find('=');
            if (eq == std::string::npos) throw UsageError("--base expects var=weight,...");
            auto idx = vs->index_of(item.substr(0, eq));
            if (!idx) throw UsageError("unknown base variable in --base");
            base[*idx] = std::stol(item.substr(eq + 1));
        }
    }
    std::vector<std::pair<Auto, Auto>> pairs;
    for (const Auto& x : autos) pairs.emplace_back(x, triangular_inverse(x, default_order(vs)));
    print_json(out, weight_to_json(bounding_weights(pairs, vs, order, base)));
    return 0;
}

int cmd_degree_check(const Args& a, std::ostream& out, std::ostream&) {
    Auto x = auto_from_json(load_json_file(a.pos(0, "auto.json")));
    WeightFn w = weight_from_json(load_json_file(a.pos(1, "weights.json")), x.varset());
    Auto inv = a.flags.count("inverse")
                   ? auto_from_json(load_json_file(a.flags.at("inverse")))
                   : triangular_inverse(x, order_for(a, x.varset()));
    PreserveCheck c = is_degree_preserving(x, inv, w);
    Json j;
    j["preserving"] = c.preserving;
    if (!c.preserving) {
        j["variable"] = x.varset()->name(c.witness_var);
        j["degree"] = c.got;
        j["limit"] = c.limit;
        j["on_inverse"] = c.on_inverse;
    }
    print_json(out, j);
    return c.preserving ? 0 : 1;
}

int cmd_run_corpus(const Args& a, std::ostream& out, std::ostream& err) {
    return run_corpus(a.pos(0, "fixture directory"), out, err);
}

const std::map<std::string, Handler>& handlers() {
    static const std::map<std::string, Handler> h = {
        {"check-lnd", cmd_check_lnd},
        {"bracket", cmd_bracket},
        {"exp", cmd_exp},
        {"log", cmd_log},
        {"bch", cmd_bch},
        {"commutator-log", cmd_commutator_log},
        {"auto-apply", cmd_auto_apply},
        {"auto-compose", cmd_auto_compose},
        {"auto-inverse", cmd_auto_inverse},
        {"auto-degree", cmd_auto_degree},
        {"slices", cmd_slices},
        {"project", cmd_project},
        {"expand", cmd_expand},
        {"dj-member", cmd_dj_member},
        {"rx-member", cmd_rx_member},
        {"family-include", cmd_family_include},
        {"family-equal", cmd_family_equal},
        {"reduce-commuting", cmd_reduce_commuting},
        {"cylinder", cmd_cylinder},
        {"weights", cmd_weights},
        {"degree-check", cmd_degree_check},
        {"run-corpus", cmd_run_corpus},
    };
    return h;
}

const std::vector<std::string>& known_flags_for(const std::string&) {
    static const std::vector<std::string> flags = {
        "cap", "degree-cap", "substitution-cap", "param", "scale", "order", "base", "inverse",
    };
    return flags;
}

}  // namespace

const std::vector<std::string>& subcommand_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, fn] : handlers()) out.push_back(name);
        return out;
    }();
    return names;
}

int run_corpus(const std::string& dir, std::ostream& out, std::ostream& err) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        if (entry.path().extension() == ".json") files.push_back(entry.path());
    }
    if (ec) {
        err << "error: cannot read directory " << dir << "\n";
        return 2;
    }
    if (files.empty()) {
        err << "error: no fixtures in " << dir << "\n";
        return 2;
    }
    std::sort(files.begin(), files.end());
    std::size_t passed = 0;
    // Fixture runs are pure; reports are merged in name order.
    for (const auto& f : files) {
        std::string name = f.stem().string();
        try {
            Json fx = load_json_file(f.string());
            if (fx.contains("name")) name = fx.at("name").get<std::string>();
            run_fixture(fx);
            out << "PASS " << name << "\n";
            ++passed;
        } catch (const std::exception& e) {
            out << "FAIL " << name << ": " << e.what() << "\n";
        }
    }
    out << "passed " << passed << " / total " << files.size() << "\n";
    return passed == files.size() ? 0 : 1;
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    if (args.empty() || args[0] == "help" || args[0] == "--help") {
        err << "usage: lnd <subcommand> [args]\n  subcommands:";
        for (const auto& n : subcommand_names()) err << ' ' << n;
        err << "\n  '-' as a file argument reads JSON from standard input\n";
        return args.empty() ? 2 : 0;
    }
    auto it = handlers().find(args[0]);
    if (it == handlers().end()) {
        err << "error: unknown subcommand '" << args[0] << "'\n";
        return 2;
    }
    try {
        Args a = Args::parse(args, 1, known_flags_for(args[0]));
        return it->second(a, out, err);
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const NotUnipotent& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace lnd
