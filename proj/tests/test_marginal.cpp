#include "doctest.h"

#include "entrocone/marginal.hpp"
#include "entrocone/shannon.hpp"

#include <random>
#include <set>

using namespace entrocone;

namespace {

Mask mk(const GroundPtr& g, std::initializer_list<const char*> names) {
    Mask m = 0;
    for (auto* s : names) m |= Mask(1) << g->index(s);
    return m;
}

LinearInequality entropic_chsh(const GroundPtr& g) {
    return normalize(make_inequality(g,
                                     {{{"A0", "B0"}, 1},
                                      {{"A0", "B1"}, 1},
                                      {{"A1", "B0"}, 1},
                                      {{"A1", "B1"}, -1},
                                      {{"A0"}, -1},
                                      {{"B0"}, -1}},
                                     Relation::GE));
}

}  // namespace

TEST_CASE("bell_scenario shapes") {
    auto s22 = bell_scenario({2, 2});
    CHECK(s22.ground->names() == std::vector<std::string>{"A0", "A1", "B0", "B1"});
    CHECK(s22.maximal_contexts().size() == 4);
    CHECK(s22.contexts.size() == 8);  // 4 singles + 4 pairs

    auto s33 = bell_scenario({3, 3});
    CHECK(s33.maximal_contexts().size() == 9);

    auto s222 = bell_scenario({2, 2, 2});
    auto maximal = s222.maximal_contexts();
    CHECK(maximal.size() == 8);
    for (Mask m : maximal) CHECK(popcount(m) == 3);
}

TEST_CASE("scenario closure under subsets") {
    auto g = make_ground({"A", "B", "C"});
    auto s = scenario_from_contexts(g, {mk(g, {"A", "B", "C"})});
    CHECK(s.contexts.size() == 7);
    for (Mask m : s.contexts)
        for (Mask sub = m; sub != 0; sub = (sub - 1) & m) CHECK(s.has_context(sub));
}

TEST_CASE("classify: the CHSH images form one nontrivial class") {
    auto s = bell_scenario({2, 2});
    auto g = s.ground;
    auto chsh = entropic_chsh(g);
    auto classes = classify({chsh}, s);
    REQUIRE(classes.size() == 1);
    // The 8-element group acts with a stabilizer of order 2 (party exchange
    // fixes the inequality), so the orbit has 4 distinct members.
    CHECK(classes[0].orbit_size == 4);
    CHECK_FALSE(classes[0].trivial);

    auto group = scenario_symmetries(s);
    CHECK(group.size() == 8);  // 2! * 2! * 2 (party swap)

    // every orbit member classifies to the same representative
    std::set<LinearInequality> reps;
    for (const auto& perm : group) {
        LinearInequality img(g);
        for (const auto& [m, c] : chsh.terms()) {
            Mask t = 0;
            for (int i = 0; i < 4; ++i)
                if (m & (Mask(1) << i)) t |= Mask(1) << perm[i];
            img.set_coeff(t, c);
        }
        img.set_relation(chsh.relation());
        auto cl = classify({img}, s);
        REQUIRE(cl.size() == 1);
        reps.insert(cl[0].representative);
    }
    CHECK(reps.size() == 1);
}

TEST_CASE("classify: monotonicity instance is trivial") {
    auto s = bell_scenario({2, 2});
    auto g = s.ground;
    auto mono =
        make_inequality(g, {{{"A0"}, 1}, {{"A0", "B0"}, -1}}, Relation::LE);  // H_A0 - H_A0B0 <= 0
    auto classes = classify({mono}, s);
    REQUIRE(classes.size() == 1);
    CHECK(classes[0].trivial);

    CHECK(classify({}, s).empty());
}

TEST_CASE("CHSH scenario projection: exactly one nontrivial class, the entropic CHSH") {
    auto structure = bell_structure({2, 2});
    auto cone = structure_cone(structure);
    auto scenario = bell_scenario({2, 2});
    auto res = project_scenario(cone, scenario);
    int nontrivial = 0;
    for (const auto& c : res.classes)
        if (!c.trivial) ++nontrivial;
    CHECK(nontrivial == 1);
    for (const auto& c : res.classes)
        if (!c.trivial) CHECK(c.representative == entropic_chsh(scenario.ground));
}

TEST_CASE("CHSH projection from the plain Shannon cone matches the structure projection") {
    // Without the source the answer is the same: the only constraint the
    // source adds is the CI equality, which FM removes with the source.
    auto scenario = bell_scenario({2, 2});
    auto cone = cone_from_inequalities(scenario.ground, elemental_inequalities(scenario.ground));
    auto res = project_scenario(cone, scenario);
    int nontrivial = 0;
    for (const auto& c : res.classes)
        if (!c.trivial) ++nontrivial;
    CHECK(nontrivial == 1);
}

TEST_CASE("pieces and direct strategies agree on [2,2]") {
    auto scenario = bell_scenario({2, 2});
    auto cone = cone_from_inequalities(scenario.ground, elemental_inequalities(scenario.ground));
    ProjectOptions direct;
    ProjectOptions pieces;
    pieces.strategy = Strategy::Pieces;
    auto a = project_scenario(cone, scenario, direct);
    auto b = project_scenario(cone, scenario, pieces);
    REQUIRE(a.classes.size() == b.classes.size());
    for (std::size_t i = 0; i < a.classes.size(); ++i) {
        CHECK(a.classes[i].representative == b.classes[i].representative);
        CHECK(a.classes[i].trivial == b.classes[i].trivial);
        CHECK(a.classes[i].orbit_size == b.classes[i].orbit_size);
    }
}

TEST_CASE("projected inequalities are sound on random distributions") {
    auto scenario = bell_scenario({2, 2});
    auto cone = cone_from_inequalities(scenario.ground, elemental_inequalities(scenario.ground));
    auto res = project_scenario(cone, scenario);
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        auto d = random_distribution(scenario.ground, {2, 2, 2, 2}, rng);
        auto h = entropy_vector(d);
        for (const auto& cls : res.classes) CHECK(evaluate(cls.representative, h).satisfied);
    }
}

TEST_CASE("nontrivial projected representatives are facets") {
    auto scenario = bell_scenario({2, 2});
    auto cone = cone_from_inequalities(scenario.ground, elemental_inequalities(scenario.ground));
    auto res = project_scenario(cone, scenario);
    auto rays = extreme_rays(res.cone);
    int ambient = polyhedron_dim({}, rays.directions);
    CHECK(ambient == static_cast<int>(res.cone.coords.size()));
    for (const auto& row : res.cone.ineqs) {
        auto ineq = row_to_inequality(res.cone, row, false);
        auto fd = is_facet(rays, ineq, ambient);
        CHECK(fd.facet);
    }
}
