#include "doctest.h"

#include "entrocone/moebius.hpp"
#include "entrocone/polyhedra.hpp"

#include <random>

using namespace entrocone;

TEST_CASE("moebius_forward on the one- and two-bit examples") {
    auto g1 = make_ground({"X"});
    SetFunctionVector p1(g1, std::vector<Rat>{Rat(1, 2), Rat(1, 2)});
    auto q1 = moebius_forward(p1);
    CHECK(q1.rat(0) == 1);
    CHECK(q1.rat(1) == Rat(1, 2));

    auto g2 = make_ground({"X", "Y"});
    auto qu = moebius_forward(p_vector(independent_uniform_bits(g2)));
    CHECK(qu.rats() == std::vector<Rat>{1, Rat(1, 2), Rat(1, 2), Rat(1, 4)});
    auto qc = moebius_forward(p_vector(perfectly_correlated_bits(g2)));
    CHECK(qc.rats() == std::vector<Rat>{1, Rat(1, 2), Rat(1, 2), Rat(1, 2)});
}

TEST_CASE("moebius_inverse on the two-bit examples") {
    auto g2 = make_ground({"X", "Y"});
    SetFunctionVector q(g2, std::vector<Rat>{1, Rat(1, 2), Rat(1, 2), Rat(1, 4)});
    auto res = moebius_inverse(q);
    CHECK(!res.negative_at);
    CHECK(res.p.rats() == std::vector<Rat>{Rat(1, 4), Rat(1, 4), Rat(1, 4), Rat(1, 4)});

    SetFunctionVector qc(g2, std::vector<Rat>{1, Rat(1, 2), Rat(1, 2), Rat(1, 2)});
    auto rc = moebius_inverse(qc);
    CHECK(rc.p.rats() == std::vector<Rat>{Rat(1, 2), Rat(0), Rat(0), Rat(1, 2)});

    // non-q input is reported, not clipped
    SetFunctionVector bad(g2, std::vector<Rat>{1, Rat(1, 2), Rat(1, 2), Rat(3, 4)});
    auto rb = moebius_inverse(bad);
    CHECK(rb.negative_at.has_value());
}

TEST_CASE("500 random rational p-vectors round-trip exactly, n <= 5") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 500; ++trial) {
        int n = 1 + trial % 5;
        std::vector<std::string> names;
        for (int i = 0; i < n; ++i) names.push_back("V" + std::to_string(i));
        auto g = make_ground(names);
        auto d = random_distribution(g, std::vector<int>(n, 2), rng);
        auto p = p_vector(d);
        auto round = moebius_inverse(moebius_forward(p));
        CHECK(!round.negative_at);
        CHECK(round.p == p);
    }
}

TEST_CASE("map_D on known q-vectors lands in Gamma_2") {
    auto g = make_ground({"X", "Y"});
    auto el = elemental_inequalities(g);

    SetFunctionVector qc(g, std::vector<Rat>{1, Rat(1, 2), Rat(1, 2), Rat(1, 2)});
    auto sc = map_D(qc);
    CHECK(sc.rat(0) == 0);
    CHECK(sc.rats() == std::vector<Rat>{0, Rat(1, 2), Rat(1, 2), Rat(1, 2)});
    for (const auto& e : el) CHECK(evaluate(e, sc).satisfied);

    SetFunctionVector qu(g, std::vector<Rat>{1, Rat(1, 2), Rat(1, 2), Rat(1, 4)});
    auto su = map_D(qu);
    CHECK(su.rats() == std::vector<Rat>{0, Rat(1, 2), Rat(1, 2), Rat(3, 4)});
    for (const auto& e : el) CHECK(evaluate(e, su).satisfied);

    SetFunctionVector constant(g, std::vector<Rat>{Rat(7), Rat(7), Rat(7), Rat(7)});
    auto sz = map_D(constant);
    for (Mask m = 0; m < 4; ++m) CHECK(sz.rat(m) == 0);
}

TEST_CASE("map_D_transpose: zero-sum inequalities map to their negation") {
    auto g = make_ground({"A0", "A1", "B0", "B1"});
    auto chsh = make_inequality(g,
                                {{{"A0", "B0"}, 1},
                                 {{"A0", "B1"}, 1},
                                 {{"A1", "B0"}, 1},
                                 {{"A1", "B1"}, -1},
                                 {{"A0"}, -1},
                                 {{"B0"}, -1}},
                                Relation::GE);
    auto img = map_D_transpose(chsh);
    CHECK(img.coeff(0) == 0);  // coefficients sum to zero
    for (const auto& [m, c] : chsh.terms()) CHECK(img.coeff(m) == -c);

    // submodularity maps to q_empty - q_A - q_B + q_AB >= 0
    auto g2 = make_ground({"X", "Y"});
    auto sub = make_inequality(g2, {{{"X"}, 1}, {{"Y"}, 1}, {{"X", "Y"}, -1}}, Relation::GE);
    auto qimg = map_D_transpose(sub);
    CHECK(qimg.coeff(0) == 1);
    CHECK(qimg.coeff(1) == -1);
    CHECK(qimg.coeff(2) == -1);
    CHECK(qimg.coeff(3) == 1);
}

TEST_CASE("s_membership: q-vectors of distributions are in S_n") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 500; ++trial) {
        int n = 1 + trial % 4;
        std::vector<std::string> names;
        for (int i = 0; i < n; ++i) names.push_back("V" + std::to_string(i));
        auto g = make_ground(names);
        auto q = moebius_forward(p_vector(random_distribution(g, std::vector<int>(n, 2), rng)));
        CHECK(s_membership(q).member);
    }

    auto g = make_ground({"X", "Y"});
    SetFunctionVector bad(g, std::vector<Rat>{1, Rat(1, 4), Rat(1, 2), Rat(1, 2)});
    auto w = s_membership(bad);
    CHECK_FALSE(w.member);
    CHECK(w.violated.find("decreasing") != std::string::npos);

    SetFunctionVector zero(g, std::vector<Rat>{0, 0, 0, 0});
    CHECK(s_membership(zero).member);
}

TEST_CASE("imbedding: D(M(p)) satisfies the elemental inequalities") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + trial % 3;
        std::vector<std::string> names;
        for (int i = 0; i < n; ++i) names.push_back("V" + std::to_string(i));
        auto g = make_ground(names);
        auto el = elemental_inequalities(g);
        auto h = map_D(moebius_forward(p_vector(random_distribution(g, std::vector<int>(n, 2), rng))));
        for (const auto& e : el) CHECK(evaluate(e, h).satisfied);
    }
}

TEST_CASE("translated inequalities hold on q-vectors of random distributions") {
    // Corollary at test scale: D^T images of Gamma_n elementals are valid on
    // Moebius-transformed distributions.
    std::mt19937_64 rng(31);
    auto g = make_ground({"A0", "A1", "B0", "B1"});
    auto el = elemental_inequalities(g);
    std::vector<LinearInequality> translated;
    for (const auto& e : el) translated.push_back(map_D_transpose(e));
    for (int trial = 0; trial < 100; ++trial) {
        auto q = moebius_forward(p_vector(random_distribution(g, {2, 2, 2, 2}, rng)));
        for (const auto& t : translated) CHECK(evaluate(t, q).satisfied);
    }
}
