#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lnd/djlike.hpp"
#include "test_util.hpp"

using namespace lnd;
using testutil::Rng;

namespace {

VarSetPtr xyz() { return VarSet::make({"x", "y", "z"}); }

Deriv from_coeffs(const VarSetPtr& vs, const std::vector<std::string>& exprs) {
    std::vector<Poly> cs;
    for (const auto& e : exprs) cs.push_back(parse_poly(e, vs));
    return Deriv(vs, std::move(cs));
}

Deriv dy(const VarSetPtr& vs) { return from_coeffs(vs, {"0", "1", "0"}); }
Deriv dz(const VarSetPtr& vs) { return from_coeffs(vs, {"0", "0", "1"}); }

// The non-decomposable pair: (d_z + x d_y, d_z).
Family nondecomp() {
    auto vs = xyz();
    return Family({from_coeffs(vs, {"0", "x", "1"}), dz(vs)});
}

// The Nagata pair: (d_z, x d_y + 2y d_z).
Family nagata_family() {
    auto vs = xyz();
    return Family({dz(vs), from_coeffs(vs, {"0", "x", "2*y"})});
}

VarSetPtr a5() { return VarSet::make({"x1", "x2", "x3", "x4", "x5"}); }

Family coords5() {
    auto vs = a5();
    std::vector<Deriv> gens;
    for (std::size_t i = 0; i < 5; ++i) gens.push_back(Deriv::coordinate(vs, i));
    return Family(std::move(gens));
}

// Random member of the dJ-like algebra of a fixture family with h-power
// denominators; nullopt when the draw has non-polynomial coefficients.
std::optional<Deriv> rand_member(Rng& rng, const Family& fam, const SliceSys& s) {
    auto vs = fam.varset();
    std::size_t k = fam.size();
    Deriv d = Deriv::zero(vs);
    for (std::size_t j = 0; j < k; ++j) {
        // Numerator killed by the generators from position j on: build from
        // the slice data y_1..y_j and the joint kernel of everything.
        Poly num(vs);
        std::uniform_int_distribution<int> coin(0, 2);
        for (std::size_t t = 0; t < 2; ++t) {
            Poly term = Poly::constant(vs, testutil::rand_int_rat(rng, -3, 3));
            for (std::size_t u = 0; u < j; ++u)
                if (coin(rng) == 0) term *= s.y[u];
            if (coin(rng) == 0) term *= s.h;
            num += term;
        }
        std::uniform_int_distribution<int> dpow(0, 1);
        RatFn f = RatFn(num) / RatFn(s.h.pow(dpow(rng)));
        auto scaled = fam.gen(j).try_scale(f);
        if (!scaled) return std::nullopt;
        d = d + *scaled;
    }
    return d;
}

}  // namespace

TEST_CASE("family validation") {
    auto vs = xyz();
    Deriv dx = from_coeffs(vs, {"1", "0", "0"});
    Deriv xdy = from_coeffs(vs, {"0", "x", "0"});
    CHECK_THROWS_AS(Family({dx, xdy}), std::invalid_argument);  // do not commute
    CHECK_THROWS_AS(Family({dy(vs), from_coeffs(vs, {"0", "x", "0"})}),
                    std::invalid_argument);  // proportional rows
    CHECK_THROWS_AS(Family({from_coeffs({VarSet::make({"x"})}, {"x"})}), CapExceeded);
}

TEST_CASE("annihilated_level pinned") {
    auto vs = xyz();
    Family f({dy(vs), dz(vs)});
    CHECK(annihilated_level(RatFn::constant(vs, Rat(3)), f) == 1);
    CHECK(annihilated_level(parse_expr("y", vs), f) == 2);
    CHECK(annihilated_level(parse_expr("z", vs), f) == 3);
    Family nag = nagata_family();
    CHECK(annihilated_level(parse_expr("x*z - y^2", vs), nag) == 2);
}

TEST_CASE("build_slice_system: single coordinate derivation") {
    auto vs = VarSet::make({"x", "y"});
    Family f({Deriv(vs, {Poly::constant(vs, Rat(1)), Poly(vs)})});
    SliceSys s = build_slice_system(f);
    CHECK(s.y[0].str() == "x");
    CHECK(s.x[0].str() == "x");
    CHECK(s.h.str() == "1");
}

TEST_CASE("build_slice_system: the non-decomposable pair") {
    SliceSys s = build_slice_system(nondecomp());
    CHECK(s.y[0].str() == "y");
    CHECK(s.y[1].str() == "x*z - y");
    CHECK(s.x[0].str() == "y/x");
    CHECK(s.x[1].str() == "(x*z - y)/x");
    CHECK(s.h.str() == "x^2");
}

TEST_CASE("build_slice_system: the Nagata pair") {
    SliceSys s = build_slice_system(nagata_family());
    CHECK(s.y[0].str() == "x*z - y^2");
    CHECK(s.y[1].str() == "y");
    CHECK(s.h.str() == "x^2");
}

TEST_CASE("build_slice_system: degree cap exhaustion reports the cap") {
    CHECK_THROWS_AS(build_slice_system(nagata_family(), 1), CapExceeded);
}

TEST_CASE("kernel_project pinned and properties") {
    auto vs = xyz();
    Family f = nondecomp();
    SliceSys s = build_slice_system(f);

    RatFn ker_elem = parse_expr("x^2 - 3*x", vs);
    CHECK(kernel_project(ker_elem, s) == ker_elem);

    auto vs2 = VarSet::make({"x", "y"});
    Family fx({Deriv(vs2, {Poly::constant(vs2, Rat(1)), Poly(vs2)})});
    SliceSys sx = build_slice_system(fx);
    CHECK(kernel_project(parse_expr("x", vs2), sx).is_zero());

    // Nagata family: projections are killed by both generators, idempotent.
    Family nag = nagata_family();
    SliceSys sn = build_slice_system(nag);
    for (const char* e : {"z", "y", "x*y*z", "y^2 - x"}) {
        RatFn p = kernel_project(parse_expr(e, vs), sn);
        CHECK(nag.annihilated_by_all(p));
        CHECK(kernel_project(p, sn) == p);
    }
}

TEST_CASE("kernel_project is a ring morphism on samples") {
    Rng rng(808);
    Family f = nondecomp();
    SliceSys s = build_slice_system(f);
    auto vs = f.varset();
    for (int i = 0; i < 25; ++i) {
        RatFn a(testutil::rand_poly(rng, vs, 2, 3));
        RatFn b(testutil::rand_poly(rng, vs, 2, 3));
        CHECK(kernel_project(a * b, s) == kernel_project(a, s) * kernel_project(b, s));
        CHECK(kernel_project(a + b, s) == kernel_project(a, s) + kernel_project(b, s));
    }
}

TEST_CASE("slice_expand pinned cases") {
    auto vs = xyz();
    // Coordinate family: x-coordinates are y, z themselves.
    Family f({dy(vs), dz(vs)});
    SliceSys s = build_slice_system(f);
    auto table = slice_expand(parse_poly("y^2*z", vs), s);
    REQUIRE(table.size() == 1);
    Expo key{2, 1};
    CHECK(table.at(key).str() == "1");

    // Kernel elements expand as the constant term alone.
    auto t2 = slice_expand(parse_poly("x^2 + 1", vs), s);
    REQUIRE(t2.size() == 1);
    Expo zero{0, 0};
    CHECK(t2.at(zero).str() == "x^2 + 1");

    // Non-decomposable pair: z = x_1 + x_2 exactly.
    Family nd = nondecomp();
    SliceSys snd = build_slice_system(nd);
    auto t3 = slice_expand(parse_poly("z", vs), snd);
    Expo e10{1, 0}, e01{0, 1};
    CHECK(t3.at(e10).str() == "1");
    CHECK(t3.at(e01).str() == "1");
    CHECK(t3.count(zero) == 0);
}

TEST_CASE("slice_expand reconstructs random polynomials") {
    Rng rng(90210);
    for (const Family& fam : {nondecomp(), nagata_family()}) {
        SliceSys s = build_slice_system(fam);
        auto vs = fam.varset();
        for (int i = 0; i < 50; ++i) {
            Poly g = testutil::rand_poly(rng, vs, 4, 4);
            auto table = slice_expand(g, s);
            RatFn sum = RatFn::zero(vs);
            for (const auto& [alpha, c] : table) {
                RatFn term = c;
                for (std::size_t j = 0; j < fam.size(); ++j) term = term * s.x[j].pow(alpha[j]);
                sum = sum + term;
                CHECK(fam.annihilated_by_all(c));
            }
            CHECK(sum == RatFn(g));
        }
    }
}

TEST_CASE("dj_membership pinned cases") {
    auto vs = xyz();
    // d/dy over (d_z + x d_y, d_z): member with coefficients (1/x, -1/x).
    Family nd = nondecomp();
    MembershipReport r = dj_membership(dy(vs), nd);
    REQUIRE(r.member);
    CHECK(r.level == 1);
    CHECK(r.coeffs[0].str() == "1/x");
    CHECK(r.coeffs[1].str() == "-1/x");

    // The A^5 derivation over the coordinate family.
    Family c5 = coords5();
    Deriv d5 = from_coeffs(a5(), {"0", "x1^2", "x1^2", "x3", "x2 - x4"});
    MembershipReport r5 = dj_membership(d5, c5);
    REQUIRE(r5.member);
    CHECK(r5.level == 2);
    CHECK(r5.coeffs[0].str() == "0");
    CHECK(r5.coeffs[1].str() == "x1^2");
    CHECK(r5.coeffs[2].str() == "x1^2");
    CHECK(r5.coeffs[3].str() == "x3");
    CHECK(r5.coeffs[4].str() == "x2 - x4");

    // Nagata LND over (d_z, d): member at level 2 with coefficient f.
    Family nag = nagata_family();
    Deriv flnd = from_coeffs(vs, {"0", "x*(x*z - y^2)", "2*y*(x*z - y^2)"});
    MembershipReport rn = dj_membership(flnd, nag);
    REQUIRE(rn.member);
    CHECK(rn.level == 2);
    CHECK(rn.coeffs[0].str() == "0");
    CHECK(rn.coeffs[1].str() == "x*z - y^2");

    // z d_y over (d_y, d_z): rejected with witness (j=1, l=2, value 1).
    Family yz({dy(vs), dz(vs)});
    MembershipReport bad = dj_membership(from_coeffs(vs, {"0", "z", "0"}), yz);
    CHECK(!bad.member);
    REQUIRE(bad.witness.has_value());
    CHECK(bad.witness->kind == MembershipWitness::Kind::Coefficient);
    CHECK(bad.witness->j == 1);
    CHECK(bad.witness->l == 2);
    CHECK(bad.witness->value->str() == "1");

    // The zero derivation is a member at level k+1.
    MembershipReport z = dj_membership(Deriv::zero(vs), yz);
    CHECK(z.member);
    CHECK(z.level == 3);
}

TEST_CASE("rx_membership pinned cases") {
    auto vs = xyz();
    Family yz({dy(vs), dz(vs)});
    // p(x) d_y + q(x) d_z is a member.
    Deriv good = from_coeffs(vs, {"0", "x^2 - 1", "3*x"});
    CHECK(rx_membership(good, yz).member);

    // y d_z is rejected by rx but accepted by dj at level 2.
    Deriv ydz = from_coeffs(vs, {"0", "0", "y"});
    MembershipReport r = rx_membership(ydz, yz);
    CHECK(!r.member);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->j == 2);
    CHECK(r.witness->l == 1);
    MembershipReport rdj = dj_membership(ydz, yz);
    CHECK(rdj.member);
    CHECK(rdj.level == 2);

    // f d over (d) alone: rational replica with kernel multiplier.
    Deriv core = from_coeffs(vs, {"0", "x", "2*y"});
    Family single({core});
    Deriv flnd = from_coeffs(vs, {"0", "x*(x*z - y^2)", "2*y*(x*z - y^2)"});
    CHECK(rx_membership(flnd, single).member);

    // The non-decomposable decomposition is an rx member too: 1/x lies in
    // Frac of the joint kernel.
    Family nd = nondecomp();
    MembershipReport rr = rx_membership(dy(vs), nd);
    CHECK(rr.member);
    CHECK(rr.coeffs[0].str() == "1/x");
}

TEST_CASE("rx members centralize the family (two-sided composition)") {
    auto vs = xyz();
    Family yz({dy(vs), dz(vs)});
    std::vector<Deriv> members{from_coeffs(vs, {"0", "x^2 - 1", "3*x"}),
                               from_coeffs(vs, {"0", "2*x", "x^3"})};
    for (const Deriv& d : members) {
        REQUIRE(rx_membership(d, yz).member);
        Auto e = exp_derivation(d, certify_lnd(d, 64));
        for (std::size_t i = 0; i < yz.size(); ++i) {
            Auto g = exp_derivation(yz.gen(i), yz.cert(i));
            CHECK(compose(e, g) == compose(g, e));
        }
    }
}

TEST_CASE("exactly-k truncations: rx membership against tails") {
    Family c5 = coords5();
    auto vs = a5();
    for (std::size_t i = 0; i < 5; ++i) {
        std::vector<Deriv> tail_gens;
        for (std::size_t j = i; j < 5; ++j) tail_gens.push_back(Deriv::coordinate(vs, j));
        Family tail(std::move(tail_gens));
        for (std::size_t j = i; j < 5; ++j)
            CHECK(rx_membership(Deriv::coordinate(vs, j), tail).member);
        // Frac-kernel multiples: coefficients in x1..x_{i-1} only.
        if (i > 0) {
            std::vector<std::size_t> front;
            for (std::size_t u = 0; u < i; ++u) front.push_back(u);
            Rng rng(1000 + i);
            Poly mult = testutil::rand_nonzero_poly(rng, vs, 2, 2, front);
            CHECK(rx_membership(Deriv::coordinate(vs, i).scale(mult), tail).member);
            // The previous coordinate derivation separates the levels.
            CHECK(!rx_membership(Deriv::coordinate(vs, i - 1), tail).member);
        }
    }
}

TEST_CASE("Lie closure of accepted members (brackets and kernel scalings)") {
    Rng rng(123123);
    for (const Family& fam : {coords5(), nondecomp(), nagata_family()}) {
        SliceSys s = build_slice_system(fam);
        int done = 0;
        while (done < 40) {
            auto d1 = rand_member(rng, fam, s);
            auto d2 = rand_member(rng, fam, s);
            if (!d1 || !d2) continue;
            REQUIRE(dj_membership(*d1, fam).member);
            REQUIRE(dj_membership(*d2, fam).member);
            Deriv br = bracket(*d1, *d2);
            CHECK(dj_membership(br, fam).member);
            // Scaling by a Frac(A_1) element with h-power denominator.
            Poly num = kernel_project(RatFn(testutil::rand_poly(rng, fam.varset(), 2, 2)), s).num();
            if (!num.is_zero()) {
                RatFn g = RatFn(num) / RatFn(s.h);
                if (auto scaled = d1->try_scale(g)) CHECK(dj_membership(*scaled, fam).member);
            }
            ++done;
        }
    }
}

TEST_CASE("flag stability: members preserve the annihilator tower") {
    Rng rng(456456);
    for (const Family& fam : {nondecomp(), nagata_family()}) {
        SliceSys s = build_slice_system(fam);
        auto vs = fam.varset();
        int done = 0;
        while (done < 25) {
            auto d = rand_member(rng, fam, s);
            if (!d) continue;
            Poly f = testutil::rand_poly(rng, vs, 3, 3);
            std::size_t lvl = annihilated_level(RatFn(f), fam);
            if (lvl <= fam.size()) {
                Poly df = d->apply(f);
                CHECK(annihilated_level(RatFn(df), fam) <= lvl);
            }
            ++done;
        }
    }
}

TEST_CASE("principal-multiple law: g*d accepted iff level(g) <= level(d)") {
    auto vs = xyz();
    Family nd = nondecomp();  // A_1 = K[x], A_2 = K[x, y]
    // d_z sits at level 2 in (d_z + x d_y, d_z).
    Deriv d = dz(vs);
    MembershipReport r = dj_membership(d, nd);
    REQUIRE(r.member);
    REQUIRE(r.level == 2);
    // g at level <= 2 keeps membership.
    CHECK(dj_membership(d.scale(parse_poly("y^2 + x", vs)), nd).member);
    CHECK(dj_membership(d.scale(parse_poly("x^3", vs)), nd).member);
    // g at level 3 (depends on z) breaks it.
    CHECK(!dj_membership(d.scale(parse_poly("z", vs)), nd).member);

    // A level-1 member only tolerates level-1 multipliers.
    Deriv low = from_coeffs(vs, {"0", "1", "0"});  // level 1 member
    REQUIRE(dj_membership(low, nd).level == 1);
    CHECK(dj_membership(low.scale(parse_poly("x^2", vs)), nd).member);
    CHECK(!dj_membership(low.scale(parse_poly("y", vs)), nd).member);
}

TEST_CASE("commuting-pair constraint on coefficients") {
    Rng rng(31415);
    Family c5 = coords5();
    SliceSys s = build_slice_system(c5);
    auto vs = a5();
    int done = 0;
    while (done < 20) {
        auto d1 = rand_member(rng, c5, s);
        if (!d1) continue;
        // d2 at a strictly higher level i'.
        std::vector<std::size_t> front{0, 1};
        Poly g = testutil::rand_poly(rng, vs, 2, 2, front);
        Deriv d2 = Deriv::coordinate(vs, 3).scale(g) + Deriv::coordinate(vs, 4);
        MembershipReport r1 = dj_membership(*d1, c5);
        MembershipReport r2 = dj_membership(d2, c5);
        REQUIRE(r1.member);
        REQUIRE(r2.member);
        if (!bracket(*d1, d2).is_zero()) continue;
        if (r2.level <= r1.level) continue;
        for (std::size_t j = 0; j + 1 < r2.level; ++j)
            CHECK(d2.apply(r1.coeffs[j]).is_zero());
        ++done;
    }
}

TEST_CASE("family_includes / family_equivalent pinned") {
    auto vs = xyz();
    Family yz({dy(vs), dz(vs)});
    Family just_z({dz(vs)});
    Family just_y({dy(vs)});
    CHECK(family_includes(yz, just_z).holds);
    CHECK(!family_includes(yz, just_y).holds);
    CHECK(family_includes(yz, yz).holds);

    Family mixed({from_coeffs(vs, {"0", "1", "1"}), dz(vs)});
    CHECK(family_equivalent(yz, mixed));
    Family swapped({dz(vs), dy(vs)});
    CHECK(!family_equivalent(yz, swapped));
    CHECK(family_equivalent(yz, yz));

    // Paper-style inclusion with a non-constant tail coefficient.
    Family ydz_only({from_coeffs(vs, {"0", "0", "y"})});
    CHECK(family_includes(yz, ydz_only).holds);
}

TEST_CASE("commuting_reduction pinned") {
    auto vs = VarSet::make({"x", "y"});
    Deriv dx = from_coeffs(vs, {"1", "0"});
    Deriv xdy = from_coeffs(vs, {"0", "x"});
    Deriv dyv = from_coeffs(vs, {"0", "1"});

    Family f = commuting_reduction({dx, xdy, dyv});
    REQUIRE(f.size() == 2);
    CHECK(f.gen(0) == dx);
    CHECK(f.gen(1) == dyv);

    // Already commuting input is returned unchanged.
    Family g = commuting_reduction({dx, dyv});
    CHECK(g.gen(0) == dx);
    CHECK(g.gen(1) == dyv);

    Family h = commuting_reduction({dx});
    CHECK(h.size() == 1);
    CHECK(h.gen(0) == dx);

    // Not bracket-closed: [d_x, x^2 d_y] = 2x d_y is outside the span.
    Deriv x2dy = from_coeffs(vs, {"0", "x^2"});
    CHECK_THROWS_AS(commuting_reduction({dx, x2dy}), std::invalid_argument);
}

TEST_CASE("commuting_reduction output invariants on random solvable input") {
    Rng rng(998877);
    auto vs = VarSet::make({"a", "b", "c"});
    int successes = 0;
    for (int i = 0; i < 10; ++i) {
        // Triangular derivations generate a solvable algebra; close a random
        // pair under brackets to build a valid basis.
        Deriv d1 = i % 2 == 0 ? from_coeffs(vs, {"1", "0", "0"})
                              : testutil::rand_triangular_deriv(rng, vs, 1, 1);
        Deriv d2 = testutil::rand_triangular_deriv(rng, vs, 2, 1);
        std::vector<Deriv> basis{d1, d2};
        for (int round = 0; round < 4; ++round) {
            bool grew = false;
            std::vector<Deriv> cur = basis;
            for (std::size_t a = 0; a < cur.size(); ++a)
                for (std::size_t b = a + 1; b < cur.size(); ++b) {
                    Deriv br = bracket(cur[a], cur[b]);
                    bool dup = br.is_zero();
                    for (const Deriv& e : basis)
                        if (e == br) dup = true;
                    if (!dup) {
                        basis.push_back(br);
                        grew = true;
                    }
                }
            if (!grew) break;
        }
        std::size_t want = symbolic_rank(coefficient_matrix(basis));
        if (want == 0) continue;
        try {
            Family fam = commuting_reduction(basis, 64, 2000);
            CHECK(fam.size() == want);
            CHECK(check_commuting(fam.gens()).empty());
            CHECK(is_locally_free(fam.gens()));
            ++successes;
        } catch (const std::invalid_argument&) {
            // Random draw was not bracket-closed in its span; skip.
        } catch (const CapExceeded&) {
            // Substitution blocked (Heisenberg-style surviving pair).
        }
    }
    CHECK(successes >= 1);
}

TEST_CASE("commuting_reduction reports a blocked surviving pair") {
    // Heisenberg algebra on A^3: rank 3 span, but every abelian subalgebra
    // has vector-field rank <= 2, so no substitution can succeed.
    auto vs = VarSet::make({"a", "b", "c"});
    Deriv s1 = from_coeffs(vs, {"1", "0", "0"});
    Deriv s2 = from_coeffs(vs, {"0", "a", "1"});
    Deriv s3 = from_coeffs(vs, {"0", "1", "0"});
    CHECK_THROWS_AS(commuting_reduction({s1, s2, s3}), CapExceeded);
}

TEST_CASE("cylinder_presentation pinned") {
    auto vs = xyz();
    Family yz({dy(vs), dz(vs)});
    CylPres flat = cylinder_presentation(yz, build_slice_system(yz));
    CHECK(flat.f.str() == "1");
    Expo e10{1, 0}, e01{0, 1}, e0{0, 0};
    CHECK(flat.coord_table.at(1).at(e10).str() == "1");
    CHECK(flat.coord_table.at(2).at(e01).str() == "1");
    CHECK(flat.coord_table.at(0).at(e0).str() == "x");

    Family nd = nondecomp();
    CylPres cnd = cylinder_presentation(nd, build_slice_system(nd));
    CHECK(cnd.f.str() == "x^2");
    // y = x * x_1 and z = x_1 + x_2.
    CHECK(cnd.coord_table.at(1).at(e10).str() == "x");
    CHECK(cnd.coord_table.at(2).at(e10).str() == "1");
    CHECK(cnd.coord_table.at(2).at(e01).str() == "1");

    Family nag = nagata_family();
    CylPres cn = cylinder_presentation(nag, build_slice_system(nag));
    CHECK(cn.f.str() == "x^2");
    // y = x * x_2 and z = x_1 + x * x_2^2.
    CHECK(cn.coord_table.at(1).at(e01).str() == "x");
    CHECK(cn.coord_table.at(2).at(e10).str() == "1");
    Expo e02{0, 2};
    CHECK(cn.coord_table.at(2).at(e02).str() == "x");
}
