#pragma once

#include <vector>

#include "entrocone/inequality.hpp"
#include "entrocone/polyhedra.hpp"
#include "entrocone/varset.hpp"

namespace entrocone {

// I(A:B|K) = 0 with A, B, K pairwise disjoint.
struct CiTriple {
    Mask A = 0, B = 0, K = 0;
};

// H(S) <= coeff * C (symbolic shared-randomness budget).
struct EntropyBound {
    Mask S = 0;
    Rat coeff = 1;
};

// A causal structure in the linear-constraint sense: conditional-independence
// equalities plus entropy bounds over a ground set of observables and hidden
// variables.
struct CausalStructure {
    GroundPtr ground;
    Mask hidden = 0;
    std::vector<CiTriple> ci;
    std::vector<EntropyBound> bounds;

    Mask observables() const { return full_mask(ground->size()) & ~hidden; }
};

// H(AK) + H(BK) - H(ABK) - H(K) = 0 in canonical form; overlap rejected.
LinearInequality ci_equality(const GroundPtr& g, Mask A, Mask B, Mask K);

// Validates disjointness and that every hidden variable is constrained.
void validate_structure(const CausalStructure& cs);

// Bipartite-or-more Bell structure: observables A0.., B0.., ... plus the
// hidden source L; one party-block-vs-rest CI per party boundary (the
// two-party case is the single I(A-block:B-block|L) = 0 equality).
CausalStructure bell_structure(const std::vector<int>& settings_per_party);

// The three-variable triangle. Unbounded: pairwise sources L1 (A,B),
// L2 (A,C), L3 (B,C), mutually independent, with the documented
// screening-off CIs plus the local-Markov closure the projection needs.
// Bounded: one common ancestor L with budget H(L) <= C and full screening.
CausalStructure triangle_structure(bool bounded);

// Adds the bound H(S) <= C; idempotent; S must be within the ground set.
CausalStructure attach_budget(const CausalStructure& cs, Mask S);

// All constraints of the structure as inequalities over its ground set.
std::vector<LinearInequality> structure_constraints(const CausalStructure& cs);

// Gamma_n elementals plus the structure's constraints, with a budget
// coordinate iff bounds are present.
ConeH structure_cone(const CausalStructure& cs);

std::string party_letter(int party);

}  // namespace entrocone
