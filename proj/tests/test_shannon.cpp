#include "doctest.h"

#include "entrocone/shannon.hpp"

#include <random>

using namespace entrocone;

TEST_CASE("elemental counts for n = 2..5") {
    CHECK(elemental_count(2) == 3);
    CHECK(elemental_count(3) == 9);
    CHECK(elemental_count(4) == 28);
    CHECK(elemental_count(5) == 85);
    for (int n = 1; n <= 5; ++n)
        CHECK(elemental_inequalities(n).size() == elemental_count(n));
    CHECK_THROWS_AS(elemental_inequalities(0), std::invalid_argument);
}

TEST_CASE("elemental set for n=2 is the known triple") {
    auto g = make_ground({"X1", "X2"});
    auto el = elemental_inequalities(g);
    REQUIRE(el.size() == 3);
    std::vector<LinearInequality> want = {
        normalize(make_inequality(g, {{{"X1", "X2"}, 1}, {{"X1"}, -1}}, Relation::GE)),
        normalize(make_inequality(g, {{{"X1", "X2"}, 1}, {{"X2"}, -1}}, Relation::GE)),
        normalize(make_inequality(g, {{{"X1"}, 1}, {{"X2"}, 1}, {{"X1", "X2"}, -1}}, Relation::GE)),
    };
    for (const auto& w : want) {
        bool found = false;
        for (const auto& e : el) found = found || e == w;
        CHECK(found);
    }
}

TEST_CASE("entropy vectors of simple bit distributions") {
    auto g = make_ground({"X", "Y"});
    auto indep = independent_uniform_bits(g);
    auto h = entropy_vector(indep);
    CHECK(h.num(0) == 0);
    CHECK(h.num(1) == 1);
    CHECK(h.num(2) == 1);
    CHECK(h.num(3) == 2);

    auto corr = perfectly_correlated_bits(g);
    auto hc = entropy_vector(corr);
    CHECK(hc.num(1) == 1);
    CHECK(hc.num(2) == 1);
    CHECK(hc.num(3) == 1);

    auto g3 = make_ground({"X", "Y", "Z"});
    auto h3 = entropy_vector(perfectly_correlated_bits(g3));
    for (Mask m = 1; m < 8; ++m) CHECK(h3.num(m) == 1);

    // exact variant agrees
    auto he = entropy_vector_exact(indep);
    REQUIRE(he);
    CHECK(he->rat(3) == 2);
}

TEST_CASE("conditional mutual information identities") {
    auto g = make_ground({"X", "Y"});
    auto hi = entropy_vector(independent_uniform_bits(g));
    CHECK(conditional_mutual_information(hi, 1, 2, 0) == doctest::Approx(0.0));
    auto hc = entropy_vector(perfectly_correlated_bits(g));
    CHECK(conditional_mutual_information(hc, 1, 2, 0) == doctest::Approx(1.0));

    auto g3 = make_ground({"X", "Y", "Z"});
    auto h3 = entropy_vector(perfectly_correlated_bits(g3));
    // conditioning on the copy screens off
    CHECK(conditional_mutual_information(h3, 1, 2, 4) == doctest::Approx(0.0));

    CHECK_THROWS_AS(conditional_mutual_information(h3, 3, 1, 0), std::invalid_argument);
}

TEST_CASE("every random entropy vector satisfies every elemental inequality") {
    std::mt19937_64 rng(2024);
    for (int n = 2; n <= 4; ++n) {
        std::vector<std::string> names;
        for (int i = 0; i < n; ++i) names.push_back("V" + std::to_string(i));
        auto g = make_ground(names);
        auto el = elemental_inequalities(g);
        std::uniform_int_distribution<int> card(2, 3);
        for (int trial = 0; trial < 60; ++trial) {
            std::vector<int> cards;
            for (int i = 0; i < n; ++i) cards.push_back(card(rng));
            auto d = random_distribution(g, cards, rng);
            auto h = entropy_vector(d);
            for (const auto& e : el) CHECK(evaluate(e, h).satisfied);
        }
    }
}

TEST_CASE("entropy of a product distribution is additive") {
    auto gx = make_ground({"X"});
    auto gy = make_ground({"Y"});
    auto gxy = make_ground({"X", "Y"});
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 25; ++trial) {
        auto dx = random_distribution(gx, {3}, rng);
        auto dy = random_distribution(gy, {2}, rng);
        std::vector<Rat> joint(6);
        for (int x = 0; x < 3; ++x)
            for (int y = 0; y < 2; ++y) joint[x * 2 + y] = dx.rprobs()[x] * dy.rprobs()[y];
        JointDistribution dxy(gxy, {3, 2}, joint);
        auto h = entropy_vector(dxy);
        CHECK(h.num(3) == doctest::Approx(h.num(1) + h.num(2)).epsilon(1e-12));
    }
}

TEST_CASE("dyadic distributions give exact float entropies") {
    auto g = make_ground({"X", "Y", "Z"});
    // lambda = uniform bit; X = Y = lambda, Z independent uniform bit
    std::vector<Rat> probs(8, Rat(0));
    probs[0b000] = Rat(1, 4);
    probs[0b001] = Rat(1, 4);
    probs[0b110] = Rat(1, 4);
    probs[0b111] = Rat(1, 4);
    JointDistribution d(g, {2, 2, 2}, probs);
    auto exact = entropy_vector_exact(d);
    REQUIRE(exact);
    auto fl = entropy_vector(d);
    for (Mask m = 0; m < 8; ++m) CHECK(fl.num(m) == rat_double(exact->rat(m)));
}
