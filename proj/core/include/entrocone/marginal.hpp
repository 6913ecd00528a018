#pragma once

#include <string>
#include <vector>

#include "entrocone/causal.hpp"
#include "entrocone/inequality.hpp"
#include "entrocone/polyhedra.hpp"

namespace entrocone {

// Which subsets of the observables are jointly measurable; closed under
// taking subsets (closure is completed on construction).
struct MarginalScenario {
    GroundPtr ground;            // observables only
    std::vector<Mask> contexts;  // nonempty subsets, sorted ascending

    // Party structure when built from a Bell scenario: observable indices per
    // party, in setting order. Empty for free-form scenarios.
    std::vector<std::vector<int>> parties;

    bool has_context(Mask m) const;
    std::vector<Mask> maximal_contexts() const;
};

MarginalScenario scenario_from_contexts(const GroundPtr& observables,
                                        const std::vector<Mask>& maximal);

// Contexts = all subsets with at most one observable per party.
MarginalScenario bell_scenario(const std::vector<int>& settings_per_party);

// Symmetry group of a scenario: per-party permutations of settings composed
// with permutations of equal-arity parties, given as observable-index maps.
std::vector<std::vector<int>> scenario_symmetries(const MarginalScenario& s);

struct InequalityClass {
    LinearInequality representative;  // lexicographic minimum of the orbit
    int orbit_size = 1;
    bool trivial = false;
};

// Orbit classification under the scenario symmetries. "Trivial" means
// LP-implied by the per-context elemental inequalities (plus C >= 0 for
// budget-carrying inequalities).
std::vector<InequalityClass> classify(const std::vector<LinearInequality>& ineqs,
                                      const MarginalScenario& scenario,
                                      PolyStats* stats = nullptr);

// The per-context elemental inequalities of the scenario, over its ground.
std::vector<LinearInequality> scenario_elementals(const MarginalScenario& scenario);

enum class Strategy { Direct, Pieces };

struct ProjectOptions {
    Strategy strategy = Strategy::Direct;
    FmOptions fm;
    std::string cache_dir;  // memoized subsystem projections; "" disables
};

struct ProjectResult {
    ConeH cone;  // irredundant projection over the scenario ground (+ budget)
    std::vector<InequalityClass> classes;
};

// End-to-end pipeline: substitute equalities, eliminate every non-context
// coordinate, remove redundancy, classify. The pieces strategy decomposes a
// bipartite scenario into per-setting subsystems before the final joint
// elimination; with a hidden source it uses the per-setting subsystems that
// retain the source and the budget column.
ProjectResult project_scenario(const ConeH& constraints, const MarginalScenario& scenario,
                               const ProjectOptions& opts = {});

}  // namespace entrocone
