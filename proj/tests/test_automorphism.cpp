#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lnd/automorphism.hpp"
#include "lnd/json_io.hpp"
#include "test_util.hpp"

using namespace lnd;
using testutil::Rng;

namespace {

Deriv from_coeffs(const VarSetPtr& vs, const std::vector<std::string>& exprs) {
    std::vector<Poly> cs;
    for (const auto& e : exprs) cs.push_back(parse_poly(e, vs));
    return Deriv(vs, std::move(cs));
}

// A^5 with a parameter t.
VarSetPtr a5t() {
    return VarSet::make({"x1", "x2", "x3", "x4", "x5", "t"},
                        {false, false, false, false, false, true});
}

Deriv dA5(const VarSetPtr& vs) {
    return from_coeffs(vs, {"0", "x1^2", "x1^2", "x3", "x2 - x4", "0"});
}

Auto exp_of(const Deriv& d) {
    LndCert c = certify_lnd(d, 64);
    REQUIRE(c.certified());
    return exp_derivation(d, c);
}

VarSetPtr xyz() { return VarSet::make({"x", "y", "z"}); }

Deriv nagata_lnd() {
    auto vs = xyz();
    return from_coeffs(vs, {"0", "x*(x*z - y^2)", "2*y*(x*z - y^2)"});
}

}  // namespace

TEST_CASE("exp of the zero derivation is the identity") {
    auto vs = xyz();
    CHECK(exp_of(Deriv::zero(vs)).is_identity());
}

TEST_CASE("exp(t*d) reproduces the five displayed images") {
    auto vs = a5t();
    Deriv d = dA5(vs).scale(Poly::variable(vs, 5));
    Auto h = exp_of(d);
    CHECK(h.image(0) == parse_poly("x1", vs));
    CHECK(h.image(1) == parse_poly("x2 + t*x1^2", vs));
    CHECK(h.image(2) == parse_poly("x3 + t*x1^2", vs));
    CHECK(h.image(3) == parse_poly("x4 + t*x3 + 1/2*t^2*x1^2", vs));
    CHECK(h.image(4) == parse_poly("x5 + t*(x2 - x4) + 1/2*t^2*(x1^2 - x3) - 1/6*t^3*x1^2", vs));
    CHECK(h.image(5) == parse_poly("t", vs));
}

TEST_CASE("apply_auto pinned images of h(t)") {
    auto vs = a5t();
    Auto h = exp_of(dA5(vs).scale(Poly::variable(vs, 5)));
    CHECK(h.apply(parse_poly("x4", vs)) == parse_poly("x4 + t*x3 + 1/2*t^2*x1^2", vs));
    RatFn anything = parse_expr("x1*x4 - 3", vs);
    CHECK(Auto::identity(vs).apply(anything) == anything);
}

TEST_CASE("compose: identity and one-parameter group") {
    auto vs = xyz();
    Deriv d = nagata_lnd();
    Auto a = exp_of(d);
    CHECK(compose(a, Auto::identity(vs)) == a);
    CHECK(compose(Auto::identity(vs), a) == a);
    CHECK(compose(a, exp_of(-d)).is_identity());
}

TEST_CASE("factorization of h(t) into unitriangular factors") {
    auto vs = a5t();
    Poly t = Poly::variable(vs, 5);
    Deriv d2 = from_coeffs(vs, {"0", "t*x1^2", "0", "0", "0", "0"});
    Deriv d3 = from_coeffs(vs, {"0", "0", "t*x1^2", "0", "0", "0"});
    Deriv d4 = from_coeffs(vs, {"0", "0", "0", "t*x3 + 1/2*t^2*x1^2", "0", "0"});
    Deriv d5 = from_coeffs(
        vs, {"0", "0", "0", "0", "t*(x2 - x4) + 1/2*t^2*(x1^2 - x3) - 1/6*t^3*x1^2", "0"});
    Auto h2 = exp_of(d2), h3 = exp_of(d3), h4 = exp_of(d4), h5 = exp_of(d5);
    Auto h = exp_of(dA5(vs).scale(t));
    // h2 acts last on points: h = h2 . h3 . h4 . h5 in classical notation.
    CHECK(compose(h5, compose(h4, compose(h3, h2))) == h);
    // The reversed nesting differs (the factors do not commute).
    CHECK(compose(h2, compose(h3, compose(h4, h5))) != h);
}

TEST_CASE("one_parameter: degree drops of the A^5 example") {
    auto vs = VarSet::make({"x1", "x2", "x3", "x4", "x5"});
    Deriv d = from_coeffs(vs, {"0", "x1^2", "x1^2", "x3", "x2 - x4"});
    LndCert c = certify_lnd(d, 64);

    auto degree_at = [&](const Rat& t) {
        Auto a = one_parameter(d, c, t);
        Auto ai = one_parameter(d, c, Rat(-t));
        return automorphism_degree(a, ai);
    };
    // The quadratic images of x2, x3, x4 survive at every nonzero t.
    for (int t = 1; t <= 5; ++t) CHECK(degree_at(Rat(t)) == 2);

    // The x5-image is quadratic generically and collapses to degree 1 at t=3.
    for (int t : {1, 2, 4, 5}) CHECK(one_parameter(d, c, Rat(t)).image(4).total_degree() == 2);
    Auto h3 = one_parameter(d, c, Rat(3));
    CHECK(h3.image(4).total_degree() == 1);

    Auto h2 = one_parameter(d, c, Rat(2));
    Poly img = h2.apply(parse_poly("x2 - x4", vs));
    CHECK(img == parse_poly("x2 - x4 - 2*x3", vs));
    CHECK(img.total_degree() == 1);

    CHECK(one_parameter(d, c, Rat(0)).is_identity());
    CHECK(compose(one_parameter(d, c, Rat(1)), one_parameter(d, c, Rat(-1))).is_identity());
}

TEST_CASE("one_parameter additivity on random rationals") {
    Rng rng(777);
    auto vs = VarSet::make({"a", "b", "c"});
    for (int i = 0; i < 25; ++i) {
        Deriv d = testutil::rand_triangular_deriv(rng, vs, 2, 2);
        LndCert c = certify_lnd(d, 64);
        Rat s = testutil::rand_rat(rng), t = testutil::rand_rat(rng);
        Auto lhs = compose(one_parameter(d, c, s), one_parameter(d, c, t));
        CHECK(lhs == one_parameter(d, c, Rat(s + t)));
    }
}

TEST_CASE("log: pinned cases") {
    auto v1 = VarSet::make({"x"});
    Auto shift(v1, {parse_poly("x + 1", v1)});
    CHECK(log_automorphism(shift) == Deriv(v1, {Poly::constant(v1, Rat(1))}));

    auto v2 = VarSet::make({"x", "y"});
    Auto a(v2, {parse_poly("x", v2), parse_poly("y + x^2", v2)});
    CHECK(log_automorphism(a) == from_coeffs(v2, {"0", "x^2"}));

    Auto dbl(v1, {parse_poly("2*x", v1)});
    CHECK_THROWS_AS(log_automorphism(dbl, 64), NotUnipotent);
}

TEST_CASE("exp/log are mutually inverse on the Nagata automorphism") {
    Deriv d = nagata_lnd();
    Auto nu = exp_of(d);
    auto vs = d.varset();
    CHECK(nu.image(2) ==
          parse_poly("z + 2*y*(x*z - y^2) + x*(x*z - y^2)^2", vs));
    CHECK(automorphism_degree(nu, exp_of(-d)) == 5);
    CHECK(log_automorphism(nu, 64) == d);
}

TEST_CASE("exp/log round trip on random triangular derivations") {
    Rng rng(314159);
    for (int i = 0; i < 60; ++i) {
        std::size_t n = 2 + i % 4;
        std::vector<std::string> names;
        for (std::size_t v = 0; v < n; ++v) names.push_back("x" + std::to_string(v + 1));
        auto vs = VarSet::make(names);
        Deriv d = testutil::rand_triangular_deriv(rng, vs, 3, 2);
        Auto a = exp_of(d);
        Deriv back = log_automorphism(a, 256);
        CHECK(back == d);
        CHECK(exp_of(back) == a);
    }
}

TEST_CASE("equivariance: log of a conjugate is the pushforward") {
    Rng rng(2718);
    auto vs = VarSet::make({"a", "b", "c"});
    std::vector<std::size_t> order{0, 1, 2};
    for (int i = 0; i < 20; ++i) {
        Deriv d = testutil::rand_triangular_deriv(rng, vs, 2, 2);
        // Unitriangular tau from a second random derivation.
        Deriv td = testutil::rand_triangular_deriv(rng, vs, 2, 2);
        Auto tau = exp_of(td);
        Auto tau_inv = triangular_inverse(tau, order);
        Auto conj = compose(tau, compose(exp_of(d), tau_inv));
        CHECK(log_automorphism(conj, 256) == pushforward(d, tau, tau_inv));
    }
}

TEST_CASE("bch: pinned and random cases") {
    auto v2 = VarSet::make({"x", "y"});
    Deriv dx = from_coeffs(v2, {"1", "0"});
    Deriv xdy = from_coeffs(v2, {"0", "x"});
    LndCert cx = certify_lnd(dx, 64), cxy = certify_lnd(xdy, 64);

    CHECK(bch(dx, Deriv::zero(v2), cx, certify_lnd(Deriv::zero(v2), 64)) == dx);

    Deriv z = bch(dx, xdy, cx, cxy);
    CHECK(z == from_coeffs(v2, {"1", "x + 1/2"}));
    CHECK(exp_of(z) == compose(exp_of(dx), exp_of(xdy)));

    // Commuting pair: bch is the sum.
    Deriv dy = from_coeffs(v2, {"0", "1"});
    CHECK(bch(dx, dy, cx, certify_lnd(dy, 64)) == dx + dy);
}

TEST_CASE("bch associativity witness") {
    Rng rng(161803);
    auto vs = VarSet::make({"x1", "x2", "x3", "x4"});
    for (int i = 0; i < 15; ++i) {
        Deriv a = testutil::rand_triangular_deriv(rng, vs, 2, 2);
        Deriv b = testutil::rand_triangular_deriv(rng, vs, 2, 2);
        Deriv c = testutil::rand_triangular_deriv(rng, vs, 2, 2);
        LndCert ca = certify_lnd(a, 64), cb = certify_lnd(b, 64), cc = certify_lnd(c, 64);
        Deriv inner = bch(b, c, cb, cc);
        Deriv z = bch(a, inner, ca, certify_lnd(inner, 256), 256);
        CHECK(exp_of(z) == compose(exp_of(a), compose(exp_of(b), exp_of(c))));
    }
}

TEST_CASE("group commutator log: pinned cases") {
    auto v2 = VarSet::make({"x", "y"});
    Deriv dx = from_coeffs(v2, {"1", "0"});
    Deriv xdy = from_coeffs(v2, {"0", "x"});
    Deriv dy = from_coeffs(v2, {"0", "1"});
    LndCert cx = certify_lnd(dx, 64), cxy = certify_lnd(xdy, 64), cy = certify_lnd(dy, 64);

    // Commuting pair: the commutator is the identity.
    CommutatorLog trivial = group_commutator_log(dx, dy, cx, cy);
    CHECK(trivial.log.is_zero());
    CHECK(trivial.equal == trivial.lie_bracket.is_zero());

    // 2-step nilpotent case: log of the group commutator equals the bracket.
    CommutatorLog cl = group_commutator_log(dx, xdy, cx, cxy);
    CHECK(cl.log == from_coeffs(v2, {"0", "1"}));
    CHECK(cl.lie_bracket == cl.log);
    CHECK(cl.equal);

    // Deeper case: equality is reported, not asserted.
    Deriv d1 = from_coeffs(v2, {"1", "x"});
    Deriv d2 = from_coeffs(v2, {"0", "x^2"});
    CommutatorLog deep = group_commutator_log(d1, d2, certify_lnd(d1, 64), certify_lnd(d2, 64));
    CHECK(certify_lnd(deep.log, 64).certified());
}

TEST_CASE("group commutator log of triangular inputs passes the bounded certificate") {
    Rng rng(555);
    auto vs = VarSet::make({"a", "b", "c"});
    for (int i = 0; i < 15; ++i) {
        Deriv d1 = testutil::rand_triangular_deriv(rng, vs, 2, 2);
        Deriv d2 = testutil::rand_triangular_deriv(rng, vs, 2, 2);
        CommutatorLog cl =
            group_commutator_log(d1, d2, certify_lnd(d1, 64), certify_lnd(d2, 64), 256);
        CHECK(try_iterated_zero(cl.log, 256).has_value());
    }
}

TEST_CASE("triangular_inverse pinned") {
    auto v2 = VarSet::make({"x", "y"});
    Auto a(v2, {parse_poly("x", v2), parse_poly("y + x^2", v2)});
    Auto inv = triangular_inverse(a, {0, 1});
    CHECK(inv.image(1) == parse_poly("y - x^2", v2));

    Auto swap(v2, {parse_poly("y", v2), parse_poly("x", v2)});
    CHECK_THROWS_AS(triangular_inverse(swap, {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(triangular_inverse(swap, {1, 0}), std::invalid_argument);

    // Inverse of h(1) is h(-1).
    auto vs = VarSet::make({"x1", "x2", "x3", "x4", "x5"});
    Deriv d = from_coeffs(vs, {"0", "x1^2", "x1^2", "x3", "x2 - x4"});
    LndCert c = certify_lnd(d, 64);
    Auto h1 = one_parameter(d, c, Rat(1));
    CHECK(triangular_inverse(h1, {0, 1, 2, 3, 4}) == one_parameter(d, c, Rat(-1)));
}

TEST_CASE("automorphism_degree validates the pair") {
    auto v2 = VarSet::make({"x", "y"});
    Auto a(v2, {parse_poly("x", v2), parse_poly("y + x^2", v2)});
    Auto wrong(v2, {parse_poly("x", v2), parse_poly("y + x", v2)});
    CHECK_THROWS_AS(automorphism_degree(a, wrong), std::invalid_argument);
    CHECK(automorphism_degree(Auto::identity(v2), Auto::identity(v2)) == 1);
}
