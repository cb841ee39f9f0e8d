#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lnd/linalg.hpp"
#include "test_util.hpp"

using namespace lnd;
using testutil::Rng;

namespace {

VarSetPtr xyz() { return VarSet::make({"x", "y", "z"}); }

RatMatrix from_strings(const VarSetPtr& vs, const std::vector<std::vector<std::string>>& rows) {
    RatMatrix m(rows.size(), rows[0].size(), vs);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) m.at(r, c) = parse_expr(rows[r][c], vs);
    return m;
}

}  // namespace

TEST_CASE("symbolic_rank pinned cases") {
    auto vs = xyz();
    // Family (d_z + x d_y, d_z) as coefficient rows on (x, y, z).
    CHECK(symbolic_rank(from_strings(vs, {{"0", "x", "1"}, {"0", "0", "1"}})) == 2);
    CHECK(symbolic_rank(from_strings(vs, {{"0", "0", "0"}, {"0", "0", "0"}})) == 0);
    CHECK(symbolic_rank(from_strings(vs, {{"1", "0", "0"}, {"0", "1", "0"}})) == 2);
    // Proportional rows.
    CHECK(symbolic_rank(from_strings(vs, {{"0", "1", "0"}, {"0", "x", "0"}})) == 1);
}

TEST_CASE("solve_in_span pinned cases") {
    auto vs = xyz();
    RatMatrix rows = from_strings(vs, {{"0", "x", "1"}, {"0", "0", "1"}});
    std::vector<RatFn> target{RatFn::zero(vs), RatFn::constant(vs, Rat(1)), RatFn::zero(vs)};
    auto c = solve_in_span(rows, target);
    REQUIRE(c.has_value());
    CHECK((*c)[0].str() == "1/x");
    CHECK((*c)[1].str() == "-1/x");

    // target equal to row 1.
    std::vector<RatFn> t2{RatFn::zero(vs), parse_expr("x", vs), RatFn::constant(vs, Rat(1))};
    auto c2 = solve_in_span(rows, t2);
    REQUIRE(c2.has_value());
    CHECK((*c2)[0] == RatFn::constant(vs, Rat(1)));
    CHECK((*c2)[1].is_zero());

    // (d/dy), target d/dz on A^2(y, z): no solution.
    auto vs2 = VarSet::make({"y", "z"});
    RatMatrix r3 = from_strings(vs2, {{"1", "0"}});
    std::vector<RatFn> t3{RatFn::zero(vs2), RatFn::constant(vs2, Rat(1))};
    CHECK(!solve_in_span(r3, t3).has_value());
}

TEST_CASE("solve reconstruction on random systems") {
    Rng rng(42);
    auto vs = xyz();
    for (int it = 0; it < 40; ++it) {
        std::size_t k = 1 + it % 3, n = 3;
        RatMatrix rows(k, n, vs);
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < n; ++c)
                rows.at(r, c) = RatFn(testutil::rand_poly(rng, vs, 2, 2));
        std::vector<RatFn> coeff;
        for (std::size_t r = 0; r < k; ++r) coeff.push_back(RatFn(testutil::rand_poly(rng, vs, 1, 2)));
        std::vector<RatFn> target(n, RatFn::zero(vs));
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t r = 0; r < k; ++r) target[c] = target[c] + coeff[r] * rows.at(r, c);
        auto sol = solve_in_span(rows, target);
        REQUIRE(sol.has_value());
        for (std::size_t c = 0; c < n; ++c) {
            RatFn acc = RatFn::zero(vs);
            for (std::size_t r = 0; r < k; ++r) acc = acc + (*sol)[r] * rows.at(r, c);
            CHECK(acc == target[c]);
        }
    }
}

TEST_CASE("rank: scaling and swap invariance, generic-point consistency") {
    Rng rng(4242);
    auto vs = xyz();
    for (int it = 0; it < 25; ++it) {
        RatMatrix m(2, 3, vs);
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t c = 0; c < 3; ++c) m.at(r, c) = RatFn(testutil::rand_poly(rng, vs, 2, 2));
        std::size_t rank = symbolic_rank(m);

        RatMatrix swapped(2, 3, vs);
        for (std::size_t c = 0; c < 3; ++c) {
            swapped.at(0, c) = m.at(1, c);
            swapped.at(1, c) = m.at(0, c);
        }
        CHECK(symbolic_rank(swapped) == rank);

        RatMatrix scaled = m;
        RatFn s = parse_expr("x^2 + 1", vs);
        for (std::size_t c = 0; c < 3; ++c) scaled.at(0, c) = s * m.at(0, c);
        CHECK(symbolic_rank(scaled) == rank);

        // Numeric oracle: rank at sampled points is <= symbolic rank, with
        // equality at some point out of 5 samples.
        bool hit = false;
        int sampled = 0;
        for (int s5 = 0; s5 < 5; ++s5) {
            auto pt = testutil::rand_point(rng, vs->size());
            RatGrid g(2, RatVec(3, Rat(0)));
            bool ok = true;
            try {
                for (std::size_t r = 0; r < 2 && ok; ++r)
                    for (std::size_t c = 0; c < 3; ++c) g[r][c] = m.at(r, c).evaluate(pt);
            } catch (const std::domain_error&) {
                ok = false;
            }
            if (!ok) continue;
            ++sampled;
            std::size_t nr = rat_rank(g);
            CHECK(nr <= rank);
            if (nr == rank) hit = true;
        }
        if (sampled > 0) CHECK(hit);
    }
}

TEST_CASE("rat_nullspace canonical basis") {
    // Kernel of [1 1 0; 0 0 1] is spanned by (1, -1, 0).
    RatGrid m{{Rat(1), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(1)}};
    RatGrid ker = rat_nullspace(m, 3);
    REQUIRE(ker.size() == 1);
    CHECK(ker[0][0] == 1);
    CHECK(ker[0][1] == -1);
    CHECK(ker[0][2] == 0);
}
