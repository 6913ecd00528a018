#include "entrocone/moebius.hpp"

#include <stdexcept>

namespace entrocone {

namespace {

void require_exact(const SetFunctionVector& v, const char* who) {
    if (!v.exact()) throw std::invalid_argument(std::string(who) + ": exact rational input required");
}

}  // namespace

SetFunctionVector moebius_forward(const SetFunctionVector& p) {
    require_exact(p, "moebius_forward");
    const int n = p.n();
    std::vector<Rat> q = p.rats();
    // superset zeta: q[A] = sum_{B >= A} p[B]
    for (int i = 0; i < n; ++i) {
        const Mask bit = Mask(1) << i;
        for (Mask m = 0; m < (Mask(1) << n); ++m)
            if (!(m & bit)) q[m] += q[m | bit];
    }
    return SetFunctionVector(p.ground(), std::move(q));
}

MoebiusInverseResult moebius_inverse(const SetFunctionVector& q) {
    require_exact(q, "moebius_inverse");
    const int n = q.n();
    std::vector<Rat> p = q.rats();
    // superset Moebius: p[A] = sum_{B >= A} (-1)^{|B|-|A|} q[B]
    for (int i = 0; i < n; ++i) {
        const Mask bit = Mask(1) << i;
        for (Mask m = 0; m < (Mask(1) << n); ++m)
            if (!(m & bit)) p[m] -= p[m | bit];
    }
    MoebiusInverseResult out{SetFunctionVector(q.ground(), std::move(p)), std::nullopt};
    for (Mask m = 0; m < (Mask(1) << n); ++m) {
        if (out.p.rat(m) < 0) {
            out.negative_at = m;
            break;
        }
    }
    return out;
}

SetFunctionVector p_vector(const JointDistribution& d) {
    if (!d.exact()) throw std::invalid_argument("p_vector: exact distribution required");
    const int n = d.ground()->size();
    for (int c : d.cards())
        if (c != 2) throw std::invalid_argument("p_vector: binary variables only");
    std::vector<Rat> p(std::size_t(1) << n, Rat(0));
    // outcome tuple -> subset of positions that came out 0
    for (std::size_t idx = 0; idx < d.rprobs().size(); ++idx) {
        Mask A = 0;
        std::size_t rest = idx;
        for (int i = n - 1; i >= 0; --i) {
            int outcome = static_cast<int>(rest % 2);
            rest /= 2;
            if (outcome == 0) A |= Mask(1) << i;
        }
        p[A] += d.rprobs()[idx];
    }
    return SetFunctionVector(d.ground(), std::move(p));
}

SetFunctionVector map_D(const SetFunctionVector& s) {
    require_exact(s, "map_D");
    const int n = s.n();
    std::vector<Rat> out(std::size_t(1) << n);
    const Rat s0 = s.rat(0);
    for (Mask m = 0; m < (Mask(1) << n); ++m) out[m] = s0 - s.rat(m);
    return SetFunctionVector(s.ground(), std::move(out));
}

LinearInequality map_D_transpose(const LinearInequality& f) {
    if (f.bound() != 0 || f.budget() != 0)
        throw std::invalid_argument("map_D_transpose: homogeneous inequalities only");
    LinearInequality g = f.relation() == Relation::LE ? f.negated() : f;
    LinearInequality out(g.ground());
    Rat empty_coeff = 0;
    for (const auto& [m, c] : g.terms()) {
        if (m == 0) continue;
        empty_coeff += c;
        out.set_coeff(m, -c);
    }
    // Any explicit empty-set coefficient of f dies: the first row of D is zero.
    out.set_coeff(0, empty_coeff);
    out.set_relation(Relation::GE);
    return out;
}

SnWitness s_membership(const SetFunctionVector& q) {
    require_exact(q, "s_membership");
    const int n = q.n();
    const Ground& g = *q.ground();
    for (Mask m = 0; m < (Mask(1) << n); ++m) {
        if (q.rat(m) < 0)
            return {false, "negative entry at q(" + mask_label(g, m) + ")"};
    }
    // decreasing over covering pairs: q(A) <= q(A \ {i})
    for (Mask m = 1; m < (Mask(1) << n); ++m) {
        for (int i = 0; i < n; ++i) {
            if (!(m & (Mask(1) << i))) continue;
            Mask below = m ^ (Mask(1) << i);
            if (q.rat(below) < q.rat(m))
                return {false, "not decreasing: q(" + mask_label(g, m) + ") > q(" +
                                   mask_label(g, below) + ")"};
        }
    }
    // super-modular over elemental pairs: q(K+i) + q(K+j) <= q(K+i+j) + q(K)
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            Mask bi = Mask(1) << i, bj = Mask(1) << j;
            Mask rest = full_mask(n) ^ bi ^ bj;
            for (Mask K = rest;; K = (K - 1) & rest) {
                if (q.rat(K | bi) + q.rat(K | bj) > q.rat(K | bi | bj) + q.rat(K))
                    return {false, "not super-modular at K=" + mask_label(g, K) + ", i=" +
                                       g.name(i) + ", j=" + g.name(j)};
                if (K == 0) break;
            }
        }
    }
    return {true, ""};
}

}  // namespace entrocone
