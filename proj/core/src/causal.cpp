#include "entrocone/causal.hpp"

#include <stdexcept>

#include "entrocone/shannon.hpp"

namespace entrocone {

LinearInequality ci_equality(const GroundPtr& g, Mask A, Mask B, Mask K) {
    if ((A & B) || (A & K) || (B & K))
        throw std::invalid_argument("ci_equality: A, B, K must be pairwise disjoint");
    if (A == 0 || B == 0) throw std::invalid_argument("ci_equality: A and B must be nonempty");
    if ((A | B | K) & ~full_mask(g->size()))
        throw std::invalid_argument("ci_equality: variables outside the ground set");
    LinearInequality eq(g);
    eq.add_coeff(A | K, 1);
    eq.add_coeff(B | K, 1);
    eq.add_coeff(A | B | K, -1);
    if (K != 0) eq.add_coeff(K, -1);
    eq.set_relation(Relation::EQ);
    return normalize(eq);
}

void validate_structure(const CausalStructure& cs) {
    const Mask all = full_mask(cs.ground->size());
    if (cs.hidden & ~all) throw std::invalid_argument("structure: hidden outside ground");
    for (const auto& t : cs.ci) {
        if ((t.A & t.B) || (t.A & t.K) || (t.B & t.K))
            throw std::invalid_argument("structure: CI triple not disjoint");
        if ((t.A | t.B | t.K) & ~all)
            throw std::invalid_argument("structure: CI outside ground");
    }
    for (const auto& b : cs.bounds)
        if (b.S & ~all) throw std::invalid_argument("structure: bound outside ground");
    // every hidden variable appears in some constraint or bound
    for (int i = 0; i < cs.ground->size(); ++i) {
        Mask bit = Mask(1) << i;
        if (!(cs.hidden & bit)) continue;
        bool used = false;
        for (const auto& t : cs.ci)
            if ((t.A | t.B | t.K) & bit) used = true;
        for (const auto& b : cs.bounds)
            if (b.S & bit) used = true;
        if (!used)
            throw std::invalid_argument("structure: hidden variable " + cs.ground->name(i) +
                                        " is unconstrained");
    }
}

std::string party_letter(int party) {
    static const char* letters = "ABCDEFGH";
    if (party < 0 || party > 7) throw std::invalid_argument("party index out of range");
    return std::string(1, letters[party]);
}

CausalStructure bell_structure(const std::vector<int>& settings_per_party) {
    const int parties = static_cast<int>(settings_per_party.size());
    if (parties < 2) throw std::invalid_argument("bell_structure: need at least 2 parties");
    for (int s : settings_per_party)
        if (s < 1) throw std::invalid_argument("bell_structure: need at least 1 setting per party");

    std::vector<std::string> names;
    std::vector<Mask> block(parties, 0);
    int idx = 0;
    for (int p = 0; p < parties; ++p)
        for (int s = 0; s < settings_per_party[p]; ++s) {
            names.push_back(party_letter(p) + std::to_string(s));
            block[p] |= Mask(1) << idx++;
        }
    names.push_back("L");
    const Mask lam = Mask(1) << idx;

    CausalStructure cs;
    cs.ground = make_ground(names);
    cs.hidden = lam;
    // chain of party-block independences given L; equivalent to the full
    // factorization p(..|L) = prod_p p(block_p|L)
    for (int p = 0; p + 1 < parties; ++p) {
        Mask rest = 0;
        for (int q = p + 1; q < parties; ++q) rest |= block[q];
        cs.ci.push_back({block[p], rest, lam});
    }
    validate_structure(cs);
    return cs;
}

CausalStructure triangle_structure(bool bounded) {
    CausalStructure cs;
    if (bounded) {
        cs.ground = make_ground({"A", "B", "C", "L"});
        const Mask A = 1, B = 2, C = 4, L = 8;
        cs.hidden = L;
        // pairwise screening plus the one-vs-rest closure (joint conditional
        // independence given the ancestor)
        cs.ci.push_back({A, B, L});
        cs.ci.push_back({A, C, L});
        cs.ci.push_back({B, C, L});
        cs.ci.push_back({A, B | C, L});
        cs.ci.push_back({B, A | C, L});
        cs.ci.push_back({C, A | B, L});
        cs.bounds.push_back({L, 1});
    } else {
        // L1 feeds A,B; L2 feeds A,C; L3 feeds B,C.
        cs.ground = make_ground({"A", "B", "C", "L1", "L2", "L3"});
        const Mask A = 1, B = 2, C = 4, L1 = 8, L2 = 16, L3 = 32;
        cs.hidden = L1 | L2 | L3;
        // independent sources
        cs.ci.push_back({L1, L2, 0});
        cs.ci.push_back({L1, L3, 0});
        cs.ci.push_back({L2, L3, 0});
        cs.ci.push_back({L1, L2 | L3, 0});
        // documented screening-offs
        cs.ci.push_back({A, B, L1});
        cs.ci.push_back({A, C, L2});
        cs.ci.push_back({B, C, L3});
        // local Markov closure: each observable is independent of everything
        // but its parents, given the parents
        cs.ci.push_back({A, B | C | L3, L1 | L2});
        cs.ci.push_back({B, A | C | L2, L1 | L3});
        cs.ci.push_back({C, A | B | L1, L2 | L3});
    }
    validate_structure(cs);
    return cs;
}

CausalStructure attach_budget(const CausalStructure& cs, Mask S) {
    if (S & ~full_mask(cs.ground->size()))
        throw std::invalid_argument("attach_budget: unknown variable");
    if (S == 0) throw std::invalid_argument("attach_budget: empty set");
    CausalStructure out = cs;
    for (const auto& b : out.bounds)
        if (b.S == S && b.coeff == 1) return out;  // idempotent
    out.bounds.push_back({S, 1});
    validate_structure(out);
    return out;
}

std::vector<LinearInequality> structure_constraints(const CausalStructure& cs) {
    validate_structure(cs);
    std::vector<LinearInequality> out;
    for (const auto& t : cs.ci) out.push_back(ci_equality(cs.ground, t.A, t.B, t.K));
    for (const auto& b : cs.bounds) {
        LinearInequality bound(cs.ground);
        bound.set_coeff(b.S, 1);
        bound.set_relation(Relation::LE);
        bound.set_budget(b.coeff);
        out.push_back(normalize(bound));
    }
    return out;
}

ConeH structure_cone(const CausalStructure& cs) {
    auto constraints = elemental_inequalities(cs.ground);
    for (auto& c : structure_constraints(cs)) constraints.push_back(std::move(c));
    std::vector<Coord> coords;
    const Mask top = full_mask(cs.ground->size());
    for (Mask m = 1; m <= top; ++m) coords.push_back(m);
    if (!cs.bounds.empty()) coords.push_back(kBudgetCoord);
    return cone_from_inequalities(cs.ground, constraints, coords);
}

}  // namespace entrocone
