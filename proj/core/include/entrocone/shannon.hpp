#pragma once

#include <optional>
#include <random>
#include <vector>

#include "entrocone/inequality.hpp"
#include "entrocone/set_function.hpp"

namespace entrocone {

// Explicit joint distribution over named finite variables. Probabilities are
// stored row-major over outcome tuples (last variable fastest).
class JointDistribution {
public:
    JointDistribution(GroundPtr ground, std::vector<int> cards, std::vector<Rat> probs);
    JointDistribution(GroundPtr ground, std::vector<int> cards, std::vector<double> probs);

    const GroundPtr& ground() const { return ground_; }
    const std::vector<int>& cards() const { return cards_; }
    bool exact() const { return exact_; }
    std::size_t table_size() const;

    const std::vector<Rat>& rprobs() const { return rprobs_; }
    const std::vector<double>& fprobs() const { return fprobs_; }

    std::size_t index_of(const std::vector<int>& outcome) const;

private:
    void validate();

    GroundPtr ground_;
    std::vector<int> cards_;
    bool exact_ = true;
    std::vector<Rat> rprobs_;
    std::vector<double> fprobs_;
};

// The minimal elemental description of the Shannon cone Gamma_n:
// n monotonicities H([n]) - H([n]\{i}) >= 0 and C(n,2)*2^(n-2)
// submodularities H(iK) + H(jK) - H(ijK) - H(K) >= 0. H(empty) = 0 is a
// representation invariant, not an emitted constraint.
std::vector<LinearInequality> elemental_inequalities(const GroundPtr& ground);
std::vector<LinearInequality> elemental_inequalities(int n);  // variables X1..Xn

// Elemental description of the Shannon cone of the variables in `vars`,
// expressed over a larger ground set (subsystem constraints).
std::vector<LinearInequality> elemental_inequalities_subset(const GroundPtr& ground, Mask vars);

std::size_t elemental_count(int n);

// Marginal Shannon entropy (base 2) of every subset. Output is float-typed;
// dyadic power-of-two probabilities produce exactly representable entries.
SetFunctionVector entropy_vector(const JointDistribution& d);

// Exact-rational entropy vector, available iff every marginal probability is
// zero or a power of two.
std::optional<SetFunctionVector> entropy_vector_exact(const JointDistribution& d);

// I(A:B|K) = v(AK) + v(BK) - v(ABK) - v(K); A, B, K pairwise disjoint.
double conditional_mutual_information(const SetFunctionVector& v, Mask A, Mask B, Mask K);
Rat conditional_mutual_information_exact(const SetFunctionVector& v, Mask A, Mask B, Mask K);

// Uniform-random exact distribution (integer weights normalized); used by the
// property suites.
JointDistribution random_distribution(const GroundPtr& ground, const std::vector<int>& cards,
                                      std::mt19937_64& rng, int max_weight = 16);

// Product of independent uniform bits for each ground variable.
JointDistribution independent_uniform_bits(const GroundPtr& ground);

// All variables equal to one shared uniform bit.
JointDistribution perfectly_correlated_bits(const GroundPtr& ground);

}  // namespace entrocone
