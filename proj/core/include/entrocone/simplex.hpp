#pragma once

#include <optional>
#include <vector>

#include "entrocone/rational.hpp"

namespace entrocone {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;  // row-major

// --- exact dense linear algebra -------------------------------------------

// Row rank via fraction-preserving Gaussian elimination.
int rank(RatMat m);

// Reduced row echelon form in place; returns pivot column per pivot row.
std::vector<int> rref(RatMat& m);

// Basis of the right null space of m (each vector has m's column count).
RatMat nullspace_basis(const RatMat& m, int cols);

// --- exact LP (phase-1 simplex, Bland's rule) ------------------------------

struct SimplexStats {
    long calls = 0;
    long pivots = 0;
};

struct ConicSolution {
    RatVec lambda;  // one nonnegative multiplier per generator
    RatVec mu;      // one signed multiplier per free column
};

// Decides whether target = G*lambda + F*mu with lambda >= 0 and mu free, by
// exact phase-1 simplex. Generators and frees are column vectors of equal
// dimension. On success the returned combination reproduces target exactly
// (verified internally); on failure a Farkas vector certifying infeasibility
// is verified internally before returning nullopt.
std::optional<ConicSolution> conic_combination(const RatMat& generators,
                                               const RatMat& frees,
                                               const RatVec& target,
                                               SimplexStats* stats = nullptr);

}  // namespace entrocone
