#pragma once

#include <optional>
#include <string>

#include "entrocone/inequality.hpp"
#include "entrocone/set_function.hpp"
#include "entrocone/shannon.hpp"

namespace entrocone {

// The p <-> q geometry for n binary experiments:
//   p(A) = Pr[X_A = 0 and X_{A^c} = 1]   (exact-event probabilities, cone P_n)
//   q(A) = Pr[X_A = 0]                   (at-least probabilities, cone Q_n)
// q is the superset-zeta transform of p; its inverse is the Moebius transform.

// q(A) = sum_{B superset of A} p(B); fast zeta transform, O(n 2^n), exact.
SetFunctionVector moebius_forward(const SetFunctionVector& p);

struct MoebiusInverseResult {
    SetFunctionVector p;
    // Set when the input was not a genuine q-vector: some recovered exact-event
    // probability is negative. Never silently clipped.
    std::optional<Mask> negative_at;
};

// p(A) = sum_{B superset of A} (-1)^{|B|-|A|} q(B); exact inverse of
// moebius_forward.
MoebiusInverseResult moebius_inverse(const SetFunctionVector& q);

// PVector from an explicit binary joint distribution (outcome 0 at position i
// puts i into the subset).
SetFunctionVector p_vector(const JointDistribution& d);

// (D s)_A = s_empty - s_A, (D s)_empty = 0; maps S_n into the Shannon cone.
SetFunctionVector map_D(const SetFunctionVector& s);

// Adjoint action on inequality vectors: (D^T f)_empty = sum_{A != empty} f_A,
// (D^T f)_A = -f_A. A Shannon-type f >= 0 maps to a q-space inequality valid
// on Moebius-transformed distributions.
LinearInequality map_D_transpose(const LinearInequality& f);

struct SnWitness {
    bool member = true;
    std::string violated;  // first violated constraint, human-readable
};

// Membership in S_n: nonnegative, decreasing over covering pairs,
// super-modular over elemental pairs.
SnWitness s_membership(const SetFunctionVector& q);

}  // namespace entrocone
