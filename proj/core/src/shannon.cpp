#include "entrocone/shannon.hpp"

#include <cmath>
#include <stdexcept>

namespace entrocone {

JointDistribution::JointDistribution(GroundPtr ground, std::vector<int> cards,
                                     std::vector<Rat> probs)
    : ground_(std::move(ground)), cards_(std::move(cards)), exact_(true), rprobs_(std::move(probs)) {
    validate();
}

JointDistribution::JointDistribution(GroundPtr ground, std::vector<int> cards,
                                     std::vector<double> probs)
    : ground_(std::move(ground)), cards_(std::move(cards)), exact_(false), fprobs_(std::move(probs)) {
    validate();
}

std::size_t JointDistribution::table_size() const {
    std::size_t sz = 1;
    for (int c : cards_) sz *= static_cast<std::size_t>(c);
    return sz;
}

void JointDistribution::validate() {
    if (static_cast<int>(cards_.size()) != ground_->size())
        throw std::invalid_argument("JointDistribution: one cardinality per variable");
    for (int c : cards_)
        if (c < 2) throw std::invalid_argument("JointDistribution: cardinalities must be >= 2");
    if (exact_) {
        if (rprobs_.size() != table_size())
            throw std::invalid_argument("JointDistribution: table size mismatch");
        Rat sum = 0;
        for (const Rat& p : rprobs_) {
            if (p < 0) throw std::invalid_argument("JointDistribution: negative probability");
            sum += p;
        }
        if (sum != 1) throw std::invalid_argument("JointDistribution: probabilities must sum to 1");
    } else {
        if (fprobs_.size() != table_size())
            throw std::invalid_argument("JointDistribution: table size mismatch");
        double sum = 0;
        for (double p : fprobs_) {
            if (p < -1e-12) throw std::invalid_argument("JointDistribution: negative probability");
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw std::invalid_argument("JointDistribution: probabilities must sum to 1");
    }
}

std::size_t JointDistribution::index_of(const std::vector<int>& outcome) const {
    if (outcome.size() != cards_.size())
        throw std::invalid_argument("outcome arity mismatch");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < cards_.size(); ++i) {
        if (outcome[i] < 0 || outcome[i] >= cards_[i])
            throw std::invalid_argument("outcome out of range");
        idx = idx * cards_[i] + outcome[i];
    }
    return idx;
}

std::vector<LinearInequality> elemental_inequalities_subset(const GroundPtr& ground, Mask vars) {
    if (vars == 0) throw std::invalid_argument("elemental_inequalities_subset: need n >= 1");
    std::vector<int> members;
    for (int i = 0; i < ground->size(); ++i)
        if (vars & (Mask(1) << i)) members.push_back(i);
    std::vector<LinearInequality> out;
    for (int i : members) {
        LinearInequality mono(ground);
        mono.set_coeff(vars, 1);
        mono.add_coeff(vars ^ (Mask(1) << i), -1);
        out.push_back(normalize(mono));
    }
    for (std::size_t a = 0; a < members.size(); ++a) {
        for (std::size_t b = a + 1; b < members.size(); ++b) {
            Mask bi = Mask(1) << members[a];
            Mask bj = Mask(1) << members[b];
            Mask rest = vars ^ bi ^ bj;
            // Enumerate K over subsets of vars \ {i,j}.
            for (Mask K = rest;; K = (K - 1) & rest) {
                LinearInequality sub(ground);
                sub.add_coeff(K | bi, 1);
                sub.add_coeff(K | bj, 1);
                sub.add_coeff(K | bi | bj, -1);
                if (K != 0) sub.add_coeff(K, -1);
                out.push_back(normalize(sub));
                if (K == 0) break;
            }
        }
    }
    return out;
}

std::vector<LinearInequality> elemental_inequalities(const GroundPtr& ground) {
    const int n = ground->size();
    if (n < 1) throw std::invalid_argument("elemental_inequalities: need n >= 1");
    return elemental_inequalities_subset(ground, full_mask(n));
}

std::vector<LinearInequality> elemental_inequalities(int n) {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("X" + std::to_string(i));
    return elemental_inequalities(make_ground(std::move(names)));
}

std::size_t elemental_count(int n) {
    if (n < 1) throw std::invalid_argument("elemental_count: need n >= 1");
    std::size_t sub = static_cast<std::size_t>(n) * (n - 1) / 2;
    std::size_t pow = n >= 2 ? (std::size_t(1) << (n - 2)) : 1;
    return static_cast<std::size_t>(n) + sub * pow;
}

namespace {

// Marginal probabilities of the variables in `m`, indexed by the outcome
// tuple restricted to those variables.
template <typename T>
std::vector<T> marginal_table(const JointDistribution& d, Mask m, const std::vector<T>& probs) {
    const auto& cards = d.cards();
    const int n = static_cast<int>(cards.size());
    std::size_t msize = 1;
    for (int i = 0; i < n; ++i)
        if (m & (Mask(1) << i)) msize *= cards[i];
    std::vector<T> out(msize, T(0));
    std::vector<int> outcome(n, 0);
    for (std::size_t idx = 0; idx < probs.size(); ++idx) {
        std::size_t midx = 0;
        for (int i = 0; i < n; ++i)
            if (m & (Mask(1) << i)) midx = midx * cards[i] + outcome[i];
        out[midx] += probs[idx];
        for (int i = n - 1; i >= 0; --i) {
            if (++outcome[i] < cards[i]) break;
            outcome[i] = 0;
        }
    }
    return out;
}

}  // namespace

SetFunctionVector entropy_vector(const JointDistribution& d) {
    const int n = d.ground()->size();
    std::vector<double> vals(std::size_t(1) << n, 0.0);
    std::vector<double> fp;
    if (d.exact()) {
        fp.reserve(d.rprobs().size());
        for (const Rat& p : d.rprobs()) fp.push_back(rat_double(p));
    } else {
        fp = d.fprobs();
    }
    for (Mask m = 1; m < (Mask(1) << n); ++m) {
        auto marg = marginal_table(d, m, fp);
        double h = 0;
        for (double p : marg)
            if (p > 0) h -= p * std::log2(p);
        vals[m] = h;
    }
    return SetFunctionVector(d.ground(), std::move(vals));
}

std::optional<SetFunctionVector> entropy_vector_exact(const JointDistribution& d) {
    if (!d.exact()) return std::nullopt;
    const int n = d.ground()->size();
    std::vector<Rat> vals(std::size_t(1) << n, Rat(0));
    for (Mask m = 1; m < (Mask(1) << n); ++m) {
        auto marg = marginal_table(d, m, d.rprobs());
        Rat h = 0;
        for (const Rat& p : marg) {
            if (p == 0) continue;
            auto k = dyadic_log2(p);
            if (!k) return std::nullopt;
            h -= p * Rat(*k);
        }
        vals[m] = h;
    }
    return SetFunctionVector(d.ground(), std::move(vals));
}

namespace {

void check_cmi_args(const SetFunctionVector& v, Mask A, Mask B, Mask K) {
    if ((A & B) || (A & K) || (B & K))
        throw std::invalid_argument("conditional_mutual_information: arguments must be disjoint");
    Mask full = full_mask(v.n());
    if ((A | B | K) & ~full)
        throw std::invalid_argument("conditional_mutual_information: arguments exceed ground set");
}

}  // namespace

double conditional_mutual_information(const SetFunctionVector& v, Mask A, Mask B, Mask K) {
    check_cmi_args(v, A, B, K);
    return v.num(A | K) + v.num(B | K) - v.num(A | B | K) - v.num(K);
}

Rat conditional_mutual_information_exact(const SetFunctionVector& v, Mask A, Mask B, Mask K) {
    check_cmi_args(v, A, B, K);
    if (!v.exact()) throw std::invalid_argument("exact CMI requires an exact vector");
    return v.rat(A | K) + v.rat(B | K) - v.rat(A | B | K) - v.rat(K);
}

JointDistribution random_distribution(const GroundPtr& ground, const std::vector<int>& cards,
                                      std::mt19937_64& rng, int max_weight) {
    std::size_t sz = 1;
    for (int c : cards) sz *= static_cast<std::size_t>(c);
    std::uniform_int_distribution<int> w(0, max_weight);
    std::vector<Rat> probs(sz);
    Int total = 0;
    while (total == 0) {
        total = 0;
        for (std::size_t i = 0; i < sz; ++i) {
            int wi = w(rng);
            probs[i] = wi;
            total += wi;
        }
    }
    for (auto& p : probs) p /= Rat(total);
    return JointDistribution(ground, cards, std::move(probs));
}

JointDistribution independent_uniform_bits(const GroundPtr& ground) {
    const int n = ground->size();
    std::size_t sz = std::size_t(1) << n;
    std::vector<Rat> probs(sz, Rat(1, Int(sz)));
    return JointDistribution(ground, std::vector<int>(n, 2), std::move(probs));
}

JointDistribution perfectly_correlated_bits(const GroundPtr& ground) {
    const int n = ground->size();
    std::size_t sz = std::size_t(1) << n;
    std::vector<Rat> probs(sz, Rat(0));
    probs.front() = Rat(1, 2);
    probs.back() = Rat(1, 2);
    return JointDistribution(ground, std::vector<int>(n, 2), std::move(probs));
}

}  // namespace entrocone
