#include "loopforge/graded.hpp"

#include "loopforge/catalog.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <numeric>

using namespace loopforge;

namespace {

GradedGroup make_graded(const char* name, int depth, std::uint64_t max_evals = 0) {
    SeriesOptions opts;
    opts.depth = depth;
    if (max_evals) opts.max_evals = max_evals;
    return graded_group(ca_filtration(catalog(name), opts));
}

int element_order(const CayleyLoop& g, int x) {
    int ord = 1, cur = x;
    while (cur != g.identity()) {
        cur = g.mul(cur, x);
        ++ord;
    }
    return ord;
}

} // namespace

TEST_CASE("smith normal form on known matrices") {
    SUBCASE("already diagonal") {
        auto r = smith_normal_form({{2, 0}, {0, 4}}, 2);
        CHECK(r.diagonal == std::vector<long long>{2, 4});
    }
    SUBCASE("divisibility gets fixed") {
        auto r = smith_normal_form({{4, 0}, {0, 6}}, 2);
        CHECK(r.diagonal == std::vector<long long>{2, 12});
    }
    SUBCASE("rectangular with unit content") {
        auto r = smith_normal_form({{1, 2, 3}, {4, 5, 6}}, 3);
        REQUIRE(r.diagonal.size() == 2);
        CHECK(r.diagonal[0] == 1);
        CHECK(r.diagonal[1] == 3);
    }
    SUBCASE("zero matrix") {
        auto r = smith_normal_form({{0, 0}}, 2);
        CHECK(r.diagonal == std::vector<long long>{0});
    }
}

TEST_CASE("invariant factors of known abelian groups") {
    CHECK(invariant_factors(catalog("Z_4")) == std::vector<long long>{4});
    CHECK(invariant_factors(catalog("Z_12")) == std::vector<long long>{12});
    CHECK(invariant_factors(catalog("V4")) == std::vector<long long>{2, 2});
    CHECK(invariant_factors(catalog("Z_1")) == std::vector<long long>{});
    // the reported factor generators really generate cyclic factors of the
    // reported orders
    for (const char* name : {"Z_4", "Z_12", "V4", "Z_16", "Z_9"}) {
        CAPTURE(name);
        CayleyLoop g = catalog(name);
        std::vector<int> gens;
        auto factors = invariant_factors(g, &gens);
        REQUIRE(factors.size() == gens.size());
        long long product = 1;
        std::vector<int> span_seed;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            CHECK(element_order(g, gens[i]) == factors[i]);
            product *= factors[i];
            span_seed.push_back(gens[i]);
        }
        CHECK(product == g.order());
        CHECK(static_cast<int>(subloop_closure(g, span_seed).size()) == g.order());
        // divisibility chain
        for (std::size_t i = 1; i < factors.size(); ++i)
            CHECK(factors[i] % factors[i - 1] == 0);
    }
}

TEST_CASE("graded components of catalog loops") {
    SUBCASE("Q8: degrees 1 and 2 with factors (2,2) and (2)") {
        GradedGroup g = make_graded("Q8", 3);
        REQUIRE(g.max_degree() == 2);
        CHECK(g.component(1).invariant_factors == std::vector<long long>{2, 2});
        CHECK(g.component(2).invariant_factors == std::vector<long long>{2});
    }
    SUBCASE("Z4: single degree with factor (4)") {
        GradedGroup g = make_graded("Z_4", 2);
        REQUIRE(g.max_degree() == 1);
        CHECK(g.component(1).invariant_factors == std::vector<long long>{4});
    }
    SUBCASE("O16: degree 1 factors (2,2,2)") {
        GradedGroup g = make_graded("O16", 4);
        REQUIRE(g.max_degree() == 3);
        CHECK(g.component(1).invariant_factors == std::vector<long long>{2, 2, 2});
        CHECK(g.component(2).order() == 1); // L_2 = L_3 = {+-1}
        CHECK(g.component(3).invariant_factors == std::vector<long long>{2});
    }
    SUBCASE("CML81 at depth 3: 27 then trivial") {
        GradedGroup g = make_graded("CML81", 3);
        REQUIRE(g.max_degree() == 2);
        CHECK(g.component(1).invariant_factors == std::vector<long long>{3, 3, 3});
        CHECK(g.component(2).order() == 1);
    }
}

TEST_CASE("lift picks the least representative name and respects cosets") {
    GradedGroup g = make_graded("Q8", 3);
    const auto& comp = g.component(1);
    for (int c = 0; c < comp.order(); ++c) {
        int rep = comp.lift[static_cast<std::size_t>(c)];
        CHECK(comp.to_coset[static_cast<std::size_t>(rep)] == c);
        for (int member : comp.coset_members[static_cast<std::size_t>(c)])
            CHECK(g.loop().name(rep) <= g.loop().name(member));
    }
}

TEST_CASE("graded bracket") {
    SUBCASE("zero absorbs") {
        GradedGroup g = make_graded("Q8", 3);
        GradedElement zero = graded_zero(g, 1);
        for (int y = 0; y < g.component(1).order(); ++y) {
            GradedElement e{1, y};
            CHECK(graded_bracket(g, zero, e) == graded_zero(g, 2));
            CHECK(graded_bracket(g, e, zero) == graded_zero(g, 2));
        }
    }
    SUBCASE("matches the group commutator on representatives (D4, Q8)") {
        for (const char* name : {"D4", "Q8"}) {
            GradedGroup g = make_graded(name, 3);
            const auto& c1 = g.component(1);
            const auto& c2 = g.component(2);
            for (int x = 0; x < c1.order(); ++x)
                for (int y = 0; y < c1.order(); ++y) {
                    int a = c1.lift[static_cast<std::size_t>(x)];
                    int b = c1.lift[static_cast<std::size_t>(y)];
                    int com = oracles::group_commutator(g.loop(), a, b);
                    GradedElement got = graded_bracket(g, {1, x}, {1, y});
                    CHECK(got.coset == c2.to_coset[static_cast<std::size_t>(com)]);
                }
        }
    }
    SUBCASE("missing component is an error") {
        GradedGroup g = make_graded("Q8", 3);
        CHECK_THROWS_AS(graded_bracket(g, {2, 0}, {1, 0}), LoopError);
    }
}

TEST_CASE("graded associator is nonzero somewhere on O16 degree (1,1,1)") {
    GradedGroup g = make_graded("O16", 4);
    bool nonzero = false;
    int n1 = g.component(1).order();
    for (int x = 0; x < n1 && !nonzero; ++x)
        for (int y = 0; y < n1 && !nonzero; ++y)
            for (int z = 0; z < n1; ++z)
                if (!(graded_associator(g, {1, x}, {1, y}, {1, z}) == graded_zero(g, 3))) {
                    nonzero = true;
                    break;
                }
    CHECK(nonzero);
}

TEST_CASE("graded associator is identically zero on groups") {
    GradedGroup g = make_graded("D4", 4);
    for (int x = 0; x < g.component(1).order(); ++x)
        for (int y = 0; y < g.component(1).order(); ++y)
            for (int z = 0; z < g.component(1).order(); ++z)
                CHECK(graded_associator(g, {1, x}, {1, y}, {1, z}) == graded_zero(g, 3));
}

TEST_CASE("graded level-1 deviations on O16 are the zero table (golden)") {
    GradedGroup g = make_graded("O16", 5);
    REQUIRE(g.max_degree() >= 4);
    int n1 = g.component(1).order();
    for (const auto& alpha : enumerate_alphas(1))
        for (int a = 0; a < n1; ++a)
            for (int b = 0; b < n1; ++b)
                for (int c = 0; c < n1; ++c)
                    for (int d = 0; d < n1; ++d) {
                        std::vector<GradedElement> xs{{1, a}, {1, b}, {1, c}, {1, d}};
                        CHECK(graded_deviation(g, xs, alpha) == graded_zero(g, 4));
                    }
}

TEST_CASE("bilinearity, trilinearity and representative independence on small loops") {
    for (const char* name : {"Q8", "D4", "S3", "LS5", "Z_8"}) {
        CAPTURE(name);
        GradedGroup g = make_graded(name, 4);
        for (int p = 1; p <= g.max_degree(); ++p)
            for (int q = 1; p + q <= g.max_degree(); ++q) {
                auto r = check_bracket_bilinear(g, p, q);
                CHECK(r.ok());
                CHECK(r.checked > 0);
            }
        for (int p = 1; p <= g.max_degree(); ++p)
            for (int q = 1; p + q < g.max_degree(); ++q)
                for (int r2 = 1; p + q + r2 <= g.max_degree(); ++r2) {
                    auto r = check_associator_trilinear(g, p, q, r2);
                    CHECK(r.ok());
                }
    }
}

TEST_CASE("representative independence on O16 (order 16, sampled caps)") {
    GradedGroup g = make_graded("O16", 4);
    auto bil = check_bracket_bilinear(g, 1, 1, 64);
    CHECK(bil.ok());
    auto tri = check_associator_trilinear(g, 1, 1, 1, 64);
    CHECK(tri.ok());
    CHECK(tri.checked > 512);
}

TEST_CASE("components report generating sets matching their invariant factors") {
    for (const char* name : {"Q8", "O16", "D4"}) {
        CAPTURE(name);
        GradedGroup g = make_graded(name, 4);
        for (const auto& comp : g.components()) {
            REQUIRE(comp.factor_generators.size() == comp.invariant_factors.size());
            long long product = 1;
            for (std::size_t i = 0; i < comp.invariant_factors.size(); ++i) {
                CHECK(element_order(comp.quotient, comp.factor_generators[i]) ==
                      comp.invariant_factors[i]);
                product *= comp.invariant_factors[i];
            }
            CHECK(product == comp.order());
            if (!comp.factor_generators.empty())
                CHECK(static_cast<int>(
                          subloop_closure(comp.quotient, comp.factor_generators).size()) ==
                      comp.order());
        }
    }
}

TEST_CASE("level-1 deviations are 4-linear on O16 at degrees (1,1,1,1)") {
    GradedGroup g = make_graded("O16", 5);
    std::vector<int> ones(4, 1);
    for (const auto& alpha : enumerate_alphas(1)) {
        auto r = check_deviation_multilinear(g, alpha, ones);
        CHECK(r.ok());
        CHECK(r.checked > 0);
    }
}

TEST_CASE("Akivis identity") {
    SUBCASE("groups reduce to Jacobi in the graded Lie ring") {
        for (const char* name : {"D4", "Q8", "S3", "Z_6"}) {
            GradedGroup g = make_graded(name, 4);
            auto r = check_akivis(g, 1, 1, 1);
            CHECK(r.ok());
        }
    }
    SUBCASE("O16 at degrees (1,1,1): all 8^3 class triples") {
        GradedGroup g = make_graded("O16", 4);
        auto r = check_akivis(g, 1, 1, 1);
        CHECK(r.ok());
        CHECK(r.checked == 512);
    }
    SUBCASE("CML81 at degrees (1,1,1) with a raised budget") {
        GradedGroup g = make_graded("CML81", 4, 400'000'000ULL);
        CHECK(g.component(3).invariant_factors == std::vector<long long>{3});
        auto r = check_akivis(g, 1, 1, 1);
        CHECK(r.ok());
        CHECK(r.checked == 27 * 27 * 27);
    }
}

TEST_CASE("graded_group refuses lower-bound filtrations") {
    SeriesOptions tiny;
    tiny.depth = 4;
    tiny.max_evals = 2000;
    Filtration f = ca_filtration(catalog("O16"), tiny);
    REQUIRE(f.lower_bound);
    CHECK_THROWS_AS(graded_group(f), LoopError);
}
