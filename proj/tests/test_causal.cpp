#include "doctest.h"

#include "entrocone/causal.hpp"
#include "entrocone/shannon.hpp"

#include <random>

using namespace entrocone;

namespace {

Mask mk(const GroundPtr& g, std::initializer_list<const char*> names) {
    Mask m = 0;
    for (auto* s : names) m |= Mask(1) << g->index(s);
    return m;
}

// Dyadic hidden-variable model for the bipartite Bell structure:
// p(a0,a1,b0,b1,L) = p(L) p(a0,a1|L) p(b0,b1|L) with all probabilities
// powers of 1/2, so entropies are exact doubles.
JointDistribution random_bell_model(const GroundPtr& g, std::mt19937_64& rng) {
    auto coin = [&](int k) { return std::uniform_int_distribution<int>(0, k - 1)(rng); };
    // L uniform on 2 values; conditionals are deterministic-or-uniform per
    // variable, which keeps every probability dyadic.
    std::vector<Rat> probs(32, Rat(0));
    int mode_a0 = coin(3), mode_a1 = coin(3), mode_b0 = coin(3), mode_b1 = coin(3);
    for (int lam = 0; lam < 2; ++lam) {
        for (int a0 = 0; a0 < 2; ++a0)
            for (int a1 = 0; a1 < 2; ++a1)
                for (int b0 = 0; b0 < 2; ++b0)
                    for (int b1 = 0; b1 < 2; ++b1) {
                        auto factor = [&](int mode, int v) {
                            // 0: copy of L, 1: constant 0, 2: uniform
                            if (mode == 0) return v == lam ? Rat(1) : Rat(0);
                            if (mode == 1) return v == 0 ? Rat(1) : Rat(0);
                            return Rat(1, 2);
                        };
                        Rat p = Rat(1, 2) * factor(mode_a0, a0) * factor(mode_a1, a1) *
                                factor(mode_b0, b0) * factor(mode_b1, b1);
                        if (p == 0) continue;
                        std::size_t idx = ((((a0 * 2 + a1) * 2 + b0) * 2 + b1) * 2 + lam);
                        probs[idx] += p;
                    }
    }
    return JointDistribution(g, {2, 2, 2, 2, 2}, probs);
}

}  // namespace

TEST_CASE("ci_equality: the Bell screening-off equality") {
    auto cs = bell_structure({2, 2});
    auto g = cs.ground;
    auto eq = ci_equality(g, mk(g, {"A0", "A1"}), mk(g, {"B0", "B1"}), mk(g, {"L"}));
    auto want = normalize(make_inequality(g,
                                          {{{"A0", "A1", "L"}, 1},
                                           {{"B0", "B1", "L"}, 1},
                                           {{"A0", "A1", "B0", "B1", "L"}, -1},
                                           {{"L"}, -1}},
                                          Relation::EQ));
    CHECK(eq == want);

    auto tri = triangle_structure(false);
    auto eq2 = ci_equality(tri.ground, mk(tri.ground, {"L1"}), mk(tri.ground, {"L2"}), 0);
    auto want2 = normalize(make_inequality(
        tri.ground, {{{"L1"}, 1}, {{"L2"}, 1}, {{"L1", "L2"}, -1}}, Relation::EQ));
    CHECK(eq2 == want2);

    CHECK_THROWS_AS(ci_equality(g, mk(g, {"A0"}), mk(g, {"A0"}), 0), std::invalid_argument);
}

TEST_CASE("bell_structure shapes") {
    auto cs = bell_structure({2, 2});
    CHECK(cs.ground->names() == std::vector<std::string>{"A0", "A1", "B0", "B1", "L"});
    REQUIRE(cs.ci.size() == 1);
    CHECK(cs.ci[0].A == mk(cs.ground, {"A0", "A1"}));
    CHECK(cs.ci[0].B == mk(cs.ground, {"B0", "B1"}));
    CHECK(cs.ci[0].K == mk(cs.ground, {"L"}));
    CHECK(cs.bounds.empty());

    auto cs33 = attach_budget(bell_structure({3, 3}), 1u << 6);
    CHECK(cs33.ground->size() == 7);
    CHECK(cs33.bounds.size() == 1);
    CHECK(attach_budget(cs33, 1u << 6).bounds.size() == 1);  // idempotent

    auto cs222 = bell_structure({2, 2, 2});
    CHECK(cs222.ground->size() == 7);
    CHECK(cs222.ci.size() == 2);

    CHECK_THROWS_AS(bell_structure({}), std::invalid_argument);
    CHECK_THROWS_AS(attach_budget(cs, 1u << 9), std::invalid_argument);
}

TEST_CASE("triangle structures carry the documented CIs") {
    auto tri = triangle_structure(false);
    auto g = tri.ground;
    auto has_ci = [&](Mask A, Mask B, Mask K) {
        for (const auto& t : tri.ci)
            if ((t.A == A && t.B == B && t.K == K) || (t.A == B && t.B == A && t.K == K))
                return true;
        return false;
    };
    CHECK(has_ci(mk(g, {"L1"}), mk(g, {"L2"}), 0));
    CHECK(has_ci(mk(g, {"L1"}), mk(g, {"L3"}), 0));
    CHECK(has_ci(mk(g, {"L2"}), mk(g, {"L3"}), 0));
    CHECK(has_ci(mk(g, {"A"}), mk(g, {"B"}), mk(g, {"L1"})));
    CHECK(has_ci(mk(g, {"A"}), mk(g, {"C"}), mk(g, {"L2"})));
    CHECK(has_ci(mk(g, {"B"}), mk(g, {"C"}), mk(g, {"L3"})));

    auto bounded = triangle_structure(true);
    CHECK(bounded.bounds.size() == 1);
    CHECK(bounded.bounds[0].S == mk(bounded.ground, {"L"}));
}

TEST_CASE("factorizing models satisfy the Bell CI constraints exactly") {
    auto cs = bell_structure({2, 2});
    auto constraints = structure_constraints(cs);
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 50; ++trial) {
        auto d = random_bell_model(cs.ground, rng);
        auto h = entropy_vector(d);  // dyadic -> exact doubles
        for (const auto& c : constraints) {
            if (c.relation() != Relation::EQ) continue;
            double v = 0;
            for (const auto& [m, coef] : c.terms()) v += rat_double(coef) * h.num(m);
            CHECK(v == 0.0);  // exact: all quantities are dyadic
        }
    }
}

TEST_CASE("structure_cone: budget coordinate appears iff bounds exist") {
    auto cs = bell_structure({2, 2});
    auto cone = structure_cone(cs);
    CHECK_FALSE(cone.has_budget());
    CHECK(cone.eqs.size() == 1);
    CHECK(cone.ineqs.size() == elemental_count(5));

    auto bounded = attach_budget(cs, mk(cs.ground, {"L"}));
    auto bcone = structure_cone(bounded);
    CHECK(bcone.has_budget());
    CHECK(bcone.ineqs.size() == elemental_count(5) + 1);
}
