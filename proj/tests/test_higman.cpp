#include "loopforge/higman.hpp"

#include "loopforge/catalog.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <random>

using namespace loopforge;

namespace {

using ZSym = BasisSymbol<ZAmbient>;
using ZVec = AbVector<ZAmbient>;
using ZEl = HigmanElement<ZAmbient>;

ZVec vec(std::initializer_list<std::pair<std::pair<long, long>, long>> fs, long g_coeff = 0) {
    ZVec v;
    for (const auto& [pq, c] : fs) v.add(ZSym::f(pq.first, pq.second), c);
    if (g_coeff) v.add(ZSym::g("y"), g_coeff);
    return v;
}

ZEl random_z_element(std::mt19937& rng) {
    HigmanLoop<ZAmbient> h;
    ZEl e;
    e.l = static_cast<long>(rng() % 21) - 10;
    int symbols = static_cast<int>(rng() % 5);
    for (int s = 0; s < symbols; ++s) {
        long c = static_cast<long>(rng() % 7) - 3;
        if (rng() % 4 == 0) {
            e.b.add(ZSym::g(rng() % 2 ? "x" : "y"), c);
        } else {
            long p = static_cast<long>(rng() % 11) - 5;
            long q = static_cast<long>(rng() % 11) - 5;
            if (p == 0) p = 1;
            if (q == 0) q = -1;
            e.b.add(ZSym::f(p, q), c);
        }
    }
    return e;
}

HigmanElement<TableAmbient> random_table_element(std::mt19937& rng, const CayleyLoop& loop) {
    HigmanElement<TableAmbient> e;
    e.l = static_cast<int>(rng() % loop.order());
    int symbols = static_cast<int>(rng() % 4);
    for (int s = 0; s < symbols; ++s) {
        int c = static_cast<int>(rng() % 7) - 3;
        int p = 1 + static_cast<int>(rng() % (loop.order() - 1));
        int q = 1 + static_cast<int>(rng() % (loop.order() - 1));
        if (p == loop.identity()) ++p;
        if (q == loop.identity()) ++q;
        e.b.add(BasisSymbol<TableAmbient>::f(p % loop.order(), q % loop.order()), c);
    }
    return e;
}

} // namespace

TEST_CASE("AbVector never stores zeros") {
    ZVec v;
    v.add(ZSym::f(1, 1), 3);
    v.add(ZSym::f(1, 1), -3);
    CHECK(v.is_zero());
    v.add(ZSym::g("y"), 2);
    CHECK(v.coeff(ZSym::g("y")) == 2);
    CHECK(v.coeff(ZSym::f(5, 5)) == 0);
    CHECK(v.terms().size() == 1);
}

TEST_CASE("Higman multiplication formulas over Z") {
    HigmanLoop<ZAmbient> h;
    SUBCASE("identity law via f(1,l) = 0") {
        ZEl u;
        u.l = 7;
        u.b.add(ZSym::g("y"), 2);
        CHECK(h.mul(h.identity(), u) == u);
        CHECK(h.mul(u, h.identity()) == u);
    }
    SUBCASE("(1,g)(1,g) = (2, 2g + f(1,1))") {
        ZEl y = h.generator_image("y", 1);
        ZEl sq = h.mul(y, y);
        CHECK(sq.l == 2);
        CHECK(sq.b == vec({{{1, 1}, 1}}, 2));
    }
    SUBCASE("delta y^3 = (3, 3g + f(1,1) + f(2,1))") {
        ZEl cube = delta_power(3);
        CHECK(cube.l == 3);
        CHECK(cube.b == vec({{{1, 1}, 1}, {{2, 1}, 1}}, 3));
    }
    SUBCASE("u\\u is the identity") {
        std::mt19937 rng(5);
        for (int t = 0; t < 100; ++t) {
            ZEl u = random_z_element(rng);
            CHECK(h.ldiv(u, u) == h.identity());
        }
    }
}

TEST_CASE("delta y^m closed form, m <= 12") {
    for (int m = 1; m <= 12; ++m) {
        ZEl d = delta_power(m);
        CHECK(d.l == m);
        ZVec expect;
        expect.add(ZSym::g("y"), m);
        for (int j = 1; j <= m - 1; ++j) expect.add(ZSym::f(j, 1), 1);
        CHECK(d.b == expect);
    }
}

TEST_CASE("Higman loop laws hold for random elements") {
    std::mt19937 rng(11);
    SUBCASE("ambient Z") {
        HigmanLoop<ZAmbient> h;
        for (int t = 0; t < 2000; ++t) {
            ZEl u = random_z_element(rng), v = random_z_element(rng);
            CHECK(h.mul(u, h.ldiv(u, v)) == v);
            CHECK(h.ldiv(u, h.mul(u, v)) == v);
            CHECK(h.mul(h.rdiv(v, u), u) == v);
            CHECK(h.rdiv(h.mul(v, u), u) == v);
            CHECK(h.mul(h.identity(), u) == u);
            CHECK(h.mul(u, h.identity()) == u);
        }
    }
    SUBCASE("ambient Q8") {
        CayleyLoop q8 = catalog("Q8");
        HigmanLoop<TableAmbient> h(TableAmbient{&q8});
        for (int t = 0; t < 2000; ++t) {
            auto u = random_table_element(rng, q8);
            auto v = random_table_element(rng, q8);
            CHECK(h.mul(u, h.ldiv(u, v)) == v);
            CHECK(h.ldiv(u, h.mul(u, v)) == v);
            CHECK(h.mul(h.rdiv(v, u), u) == v);
            CHECK(h.rdiv(h.mul(v, u), u) == v);
        }
    }
}

TEST_CASE("delta_eval is a structural homomorphism") {
    HigmanLoop<ZAmbient> h;
    std::map<std::string, mpz_class> p{{"x", 2}, {"y", 1}};
    std::mt19937 rng(17);
    auto random_term = [&](auto&& self, int depth) -> TermPtr {
        if (depth == 0 || rng() % 3 == 0) return Term::generator(rng() % 2 ? "x" : "y");
        TermOp op = static_cast<TermOp>(rng() % 3);
        return Term::node(op, self(self, depth - 1), self(self, depth - 1));
    };
    for (int t = 0; t < 200; ++t) {
        TermPtr s = random_term(random_term, 4);
        TermPtr u = random_term(random_term, 4);
        auto ds = delta_eval(*s, p, h);
        auto du = delta_eval(*u, p, h);
        CHECK(delta_eval(*mul(s, u), p, h) == h.mul(ds, du));
        CHECK(delta_eval(*ldiv(s, u), p, h) == h.ldiv(ds, du));
        CHECK(delta_eval(*rdiv(s, u), p, h) == h.rdiv(ds, du));
    }
    CHECK(delta_eval(*commutator(Term::generator("y"), Term::generator("y")), p, h) ==
          h.identity());
    std::map<std::string, mpz_class> empty;
    CHECK_THROWS_AS(delta_eval(*Term::generator("q"), empty, h), EvalError);
}

TEST_CASE("delta of a bare generator is (p(x), g(x))") {
    HigmanLoop<ZAmbient> h;
    std::map<std::string, mpz_class> p{{"y", 1}};
    auto d = delta_eval(*Term::generator("y"), p, h);
    CHECK(d.l == 1);
    ZVec expect;
    expect.add(ZSym::g("y"), 1);
    CHECK(d.b == expect);
}

TEST_CASE("witness deviation images, frozen values") {
    // base-case associators
    CHECK(delta_witness_deviation(1, 0) ==
          ZEl{0, vec({{{2, 1}, 1}, {{1, 2}, -1}})});
    CHECK(delta_witness_deviation(2, 0) ==
          ZEl{0, vec({{{3, 1}, 1}, {{2, 1}, 1}, {{1, 1}, -1}, {{2, 2}, -1}})});
    CHECK(delta_witness_deviation(3, 0) ==
          ZEl{0, vec({{{4, 1}, 1}, {{3, 1}, 1}, {{1, 1}, -1}, {{3, 2}, -1}})});
    // one induction step
    CHECK(delta_witness_deviation(1, 1) ==
          ZEl{0, vec({{{3, 1}, 1}, {{2, 1}, -1}, {{1, 1}, -1}, {{2, 2}, -1}, {{1, 2}, 2}})});
    CHECK(delta_witness_deviation(2, 1) ==
          ZEl{0, vec({{{4, 1}, 1}, {{3, 2}, -1}, {{2, 1}, -2}, {{2, 2}, 1}, {{1, 2}, 1}})});
    // two steps
    CHECK(delta_witness_deviation(2, 2) ==
          ZEl{0, vec({{{5, 1}, 1},
                      {{4, 2}, -1},
                      {{4, 1}, -1},
                      {{3, 1}, -2},
                      {{3, 2}, 2},
                      {{2, 1}, 2},
                      {{1, 2}, -2},
                      {{1, 1}, 1}})});
}

TEST_CASE("witness deviation agrees with the independent term route") {
    // expand the deviation term (y^m, y, ..., y)_{1,...,1} and push it
    // through delta_eval; must match the memoized recursion
    HigmanLoop<ZAmbient> h;
    std::map<std::string, mpz_class> p{{"y", 1}};
    TermPtr y = Term::generator("y");
    for (int m = 1; m <= 3; ++m)
        for (int n = 0; n <= 2; ++n) {
            CAPTURE(m);
            CAPTURE(n);
            std::vector<TermPtr> args;
            args.push_back(power(y, m));
            for (int k = 0; k < n + 2; ++k) args.push_back(y);
            AlphaSequence alphas(std::vector<int>(static_cast<std::size_t>(n), 1));
            TermPtr dev_term = deviation(args, alphas);
            auto via_term = delta_eval(*dev_term, p, h);
            CHECK(via_term == delta_witness_deviation(m, n));
        }
}

TEST_CASE("higman_witness certificate: leading symbol f(n+m+1,1), coefficient +1") {
    for (int m = 1; m <= 4; ++m)
        for (int n = 0; n <= 4; ++n) {
            CAPTURE(m);
            CAPTURE(n);
            WitnessReport r = higman_witness(m, n);
            CHECK(r.loop_part == 0);
            CHECK(r.leading_p == m + n + 1);
            CHECK(r.leading_q == 1);
            CHECK(r.leading_coeff == 1);
            CHECK(r.g_coeff == 0);
            CHECK(r.max_other_p < r.leading_p);
            CHECK(r.nonzero);
            CHECK(r.verdict == "outside gamma3");
        }
    CHECK_THROWS_AS(higman_witness(0, 0), LoopError);
    CHECK_THROWS_AS(higman_witness(1, -1), LoopError);
}

TEST_CASE("witness report JSON shape") {
    auto doc = witness_to_json(higman_witness(2, 1));
    CHECK(doc["m"] == 2);
    CHECK(doc["n"] == 1);
    CHECK(doc["loop_part"] == 0);
    CHECK(doc["leading_symbol"][0] == 4);
    CHECK(doc["leading_symbol"][1] == 1);
    CHECK(doc["leading_coeff"] == 1);
    CHECK(doc["g_coeff"] == 0);
    CHECK(doc["nonzero"] == true);
    CHECK(doc["verdict"] == "outside gamma3");
    CHECK(doc["coefficients"].is_array());
}

TEST_CASE("ab_vector_to_string") {
    CHECK(ab_vector_to_string(ZVec{}) == "0");
    // symbols print in their sorted order: f(1,2) before f(2,1)
    CHECK(ab_vector_to_string(vec({{{2, 1}, 1}, {{1, 2}, -1}})) == "-f(1,2) + f(2,1)");
    CHECK(ab_vector_to_string(vec({{{1, 1}, 2}}, 3)) == "2*f(1,1) + 3*g(y)");
}
