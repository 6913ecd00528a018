#include "doctest.h"

#include "entrocone/inequality.hpp"
#include "entrocone/rational.hpp"
#include "entrocone/set_function.hpp"

#include <random>

using namespace entrocone;

namespace {

GroundPtr chsh_ground() { return make_ground({"A0", "A1", "B0", "B1"}); }

}  // namespace

TEST_CASE("rational parsing and primitive scaling") {
    CHECK(rat_parse("3/6") == Rat(1, 2));
    CHECK(rat_parse("-4/2") == Rat(-2));
    CHECK_THROWS_AS(rat_parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(rat_parse("x"), std::invalid_argument);

    std::vector<Rat> v{Rat(2, 3), Rat(-4, 3), Rat(2)};
    make_primitive(v);
    CHECK(v == std::vector<Rat>{Rat(1), Rat(-2), Rat(3)});

    std::vector<Rat> zero{Rat(0), Rat(0)};
    make_primitive(zero);
    CHECK(zero == std::vector<Rat>{Rat(0), Rat(0)});

    CHECK(dyadic_log2(Rat(1, 8)) == -3);
    CHECK(dyadic_log2(Rat(4)) == 2);
    CHECK(dyadic_log2(Rat(1)) == 0);
    CHECK(!dyadic_log2(Rat(3, 8)));
    CHECK(!dyadic_log2(Rat(0)));
}

TEST_CASE("normalize: gcd scaling") {
    auto g = chsh_ground();
    // 2H_A0 + 2H_B0 - 2H_A0B0 >= 0  ->  H_A0 + H_B0 - H_A0B0 >= 0
    auto ineq = make_inequality(g, {{{"A0"}, 2}, {{"B0"}, 2}, {{"A0", "B0"}, -2}}, Relation::GE);
    auto n = normalize(ineq);
    auto want = make_inequality(g, {{{"A0"}, 1}, {{"B0"}, 1}, {{"A0", "B0"}, -1}}, Relation::GE);
    CHECK(n == want);
    CHECK(normalize(n) == n);  // idempotent
}

TEST_CASE("normalize: relation flip") {
    auto g = chsh_ground();
    auto ineq = make_inequality(g, {{{"A0"}, -1}}, Relation::LE);  // -H_A0 <= 0
    auto n = normalize(ineq);
    auto want = make_inequality(g, {{{"A0"}, 1}}, Relation::GE);
    CHECK(n == want);
}

TEST_CASE("normalize: scaled entropic CHSH returns the unscaled vector") {
    auto g = chsh_ground();
    auto chsh = make_inequality(g,
                                {{{"A0", "B0"}, 3},
                                 {{"A0", "B1"}, 3},
                                 {{"A1", "B0"}, 3},
                                 {{"A1", "B1"}, -3},
                                 {{"A0"}, -3},
                                 {{"B0"}, -3}},
                                Relation::GE);
    auto n = normalize(chsh);
    auto want = make_inequality(g,
                                {{{"A0", "B0"}, 1},
                                 {{"A0", "B1"}, 1},
                                 {{"A1", "B0"}, 1},
                                 {{"A1", "B1"}, -1},
                                 {{"A0"}, -1},
                                 {{"B0"}, -1}},
                                Relation::GE);
    CHECK(n == want);
}

TEST_CASE("normalize: all-zero input gives the trivial inequality") {
    auto g = chsh_ground();
    LinearInequality z(g);
    auto n = normalize(z);
    CHECK(n.is_zero());
    CHECK(n.relation() == Relation::GE);
}

TEST_CASE("normalize preserves the solution set on random rational vectors") {
    auto g = chsh_ground();
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> coin(-4, 4);
    for (int trial = 0; trial < 200; ++trial) {
        LinearInequality ineq(g);
        for (Mask m = 1; m < 16; ++m)
            if (coin(rng) > 1) ineq.set_coeff(m, Rat(coin(rng), 1 + std::abs(coin(rng))));
        ineq.set_relation(coin(rng) > 0 ? Relation::GE : Relation::LE);
        auto n = normalize(ineq);
        std::vector<Rat> point(16);
        for (auto& x : point) x = Rat(coin(rng), 3);
        point[0] = 0;
        SetFunctionVector v(g, point);
        CHECK(evaluate(ineq, v).satisfied == evaluate(n, v).satisfied);
    }
}

TEST_CASE("evaluate: submodularity on independent bits is saturated") {
    auto g = make_ground({"X", "Y"});
    auto ineq = make_inequality(g, {{{"X"}, 1}, {{"Y"}, 1}, {{"X", "Y"}, -1}}, Relation::GE);
    SetFunctionVector v(g, std::vector<Rat>{0, 1, 1, 2});
    auto ev = evaluate(ineq, v);
    CHECK(ev.exact);
    CHECK(ev.value_exact == 0);
    CHECK(ev.satisfied);
}

TEST_CASE("evaluate: I^E_22 on the half-half PR/classical mixture violates by m-1") {
    auto g = chsh_ground();
    // I^E_22 <= 0 in the paper's orientation.
    auto imm22 = make_inequality(g,
                                 {{{"A0"}, 1},
                                  {{"B0"}, 1},
                                  {{"A0", "B0"}, -1},
                                  {{"A0", "B1"}, -1},
                                  {{"A1", "B0"}, -1},
                                  {{"A1", "B1"}, 1}},
                                 Relation::LE);
    // Entropies of the (1/2) p_2 + (1/2) p_c box: all marginals 1, pair
    // contexts (1,1,1,2) with the 2 at (A1,B1).
    std::vector<Rat> vals(16, Rat(0));
    auto at = [&](std::initializer_list<const char*> names) {
        Mask m = 0;
        for (auto* s : names) m |= Mask(1) << g->index(s);
        return m;
    };
    vals[at({"A0"})] = 1;
    vals[at({"A1"})] = 1;
    vals[at({"B0"})] = 1;
    vals[at({"B1"})] = 1;
    vals[at({"A0", "B0"})] = 1;
    vals[at({"A0", "B1"})] = 1;
    vals[at({"A1", "B0"})] = 1;
    vals[at({"A1", "B1"})] = 2;
    SetFunctionVector v(g, vals);
    auto ev = evaluate(imm22, v);
    CHECK(ev.value_exact == 1);
    CHECK_FALSE(ev.satisfied);

    // BI^E_22 <= C on the same vector with budget 2: boundary, satisfied.
    auto bimm22 = make_inequality(g,
                                  {{{"A0"}, 1},
                                   {{"B0"}, 1},
                                   {{"A1", "B0"}, -1},
                                   {{"A0", "B1"}, -1},
                                   {{"A1", "B1"}, 1}},
                                  Relation::LE, 0, 1);
    auto ev2 = evaluate(bimm22, v, Rat(2));
    CHECK(ev2.value_exact == 2);
    CHECK(ev2.satisfied);
    CHECK_THROWS_AS(evaluate(bimm22, v), std::invalid_argument);
}

TEST_CASE("evaluate: dimension mismatch rejected") {
    auto g = chsh_ground();
    auto h = make_ground({"X", "Y"});
    auto ineq = make_inequality(g, {{{"A0"}, 1}}, Relation::GE);
    SetFunctionVector v(h, std::vector<Rat>{0, 1, 1, 2});
    CHECK_THROWS_AS(evaluate(ineq, v), std::invalid_argument);
}

TEST_CASE("text round-trip: parse(render(x)) == x for canonical forms") {
    auto g = chsh_ground();
    auto chsh = normalize(make_inequality(g,
                                          {{{"A0", "B0"}, 1},
                                           {{"A0", "B1"}, 1},
                                           {{"A1", "B0"}, 1},
                                           {{"A1", "B1"}, -1},
                                           {{"A0"}, -1},
                                           {{"B0"}, -1}},
                                          Relation::GE));
    auto text = render_inequality(chsh);
    CHECK(parse_inequality(text, g) == chsh);

    auto budget = normalize(make_inequality(g, {{{"A0"}, 1}, {{"B0"}, 1}, {{"A0", "B0"}, -1}},
                                            Relation::LE, 0, 2));
    CHECK(parse_inequality(render_inequality(budget), g) == budget);

    auto spec_line = "+1*H(A0) +1*H(B0) -1*H(A0,B0) -1*H(A1,B0) -1*H(A0,B1) +1*H(A1,B1) <= 0";
    auto parsed = parse_inequality(spec_line, g);
    CHECK(parsed.relation() == Relation::LE);
    CHECK(parsed.coeff(Mask(1) << g->index("A0")) == 1);
    CHECK(render_inequality(parsed) == spec_line);
}

TEST_CASE("random text round-trips") {
    auto g = chsh_ground();
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> coin(-6, 6);
    for (int trial = 0; trial < 100; ++trial) {
        LinearInequality ineq(g);
        for (Mask m = 1; m < 16; ++m)
            if (coin(rng) > 2) ineq.set_coeff(m, Rat(coin(rng), 1 + std::abs(coin(rng))));
        ineq.set_relation(trial % 3 == 0 ? Relation::EQ : trial % 3 == 1 ? Relation::GE : Relation::LE);
        if (trial % 4 == 0) ineq.set_budget(Rat(coin(rng)));
        if (trial % 5 == 0) ineq.set_bound(Rat(coin(rng), 2));
        auto n = normalize(ineq);
        CHECK(parse_inequality(render_inequality(n), g) == n);
    }
}
