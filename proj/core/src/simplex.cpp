#include "entrocone/simplex.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace entrocone {

int rank(RatMat m) {
    int r = 0;
    const int rows = static_cast<int>(m.size());
    if (rows == 0) return 0;
    const int cols = static_cast<int>(m[0].size());
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[r], m[piv]);
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c] / m[r][c];
            for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

std::vector<int> rref(RatMat& m) {
    std::vector<int> pivots;
    const int rows = static_cast<int>(m.size());
    if (rows == 0) return pivots;
    const int cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[r], m[piv]);
        Rat d = m[r][c];
        for (int j = 0; j < cols; ++j) m[r][j] /= d;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (int j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

RatMat nullspace_basis(const RatMat& m, int cols) {
    RatMat a = m;
    for (auto& row : a)
        if (static_cast<int>(row.size()) != cols)
            throw std::invalid_argument("nullspace_basis: ragged matrix");
    auto pivots = rref(a);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    RatMat basis;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        RatVec v(cols, Rat(0));
        v[c] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

namespace {

struct Tableau {
    // rows x (num_cols + 1); last column is the RHS.
    RatMat t;
    RatVec wrow;  // phase-1 reduced costs over all columns + current w value
    std::vector<int> basis;
    int num_cols = 0;

    Rat& at(int i, int j) { return t[i][j]; }
    Rat& rhs(int i) { return t[i][num_cols]; }
};

void pivot(Tableau& tb, int row, int col, SimplexStats* stats) {
    Rat d = tb.at(row, col);
    assert(d != 0);
    for (int j = 0; j <= tb.num_cols; ++j) tb.t[row][j] /= d;
    for (std::size_t i = 0; i < tb.t.size(); ++i) {
        if (static_cast<int>(i) == row) continue;
        Rat f = tb.t[i][col];
        if (f == 0) continue;
        for (int j = 0; j <= tb.num_cols; ++j) tb.t[i][j] -= f * tb.t[row][j];
    }
    Rat f = tb.wrow[col];
    if (f != 0)
        for (int j = 0; j <= tb.num_cols; ++j) tb.wrow[j] -= f * tb.t[row][j];
    tb.basis[row] = col;
    if (stats) ++stats->pivots;
}

}  // namespace

namespace {

struct DirectResult {
    std::optional<ConicSolution> sol;
    RatVec farkas;  // valid iff !sol: y with y.G <= 0, y.F = 0, y.target > 0
};

DirectResult conic_combination_direct(const std::vector<const RatVec*>& generators,
                                      const RatMat& frees, const RatVec& target,
                                      SimplexStats* stats) {
    const int d = static_cast<int>(target.size());
    for (const auto* g : generators)
        if (static_cast<int>(g->size()) != d)
            throw std::invalid_argument("conic_combination: generator dimension mismatch");
    for (const auto& f : frees)
        if (static_cast<int>(f.size()) != d)
            throw std::invalid_argument("conic_combination: free-column dimension mismatch");
    if (stats) ++stats->calls;

    const int ng = static_cast<int>(generators.size());
    const int nf = static_cast<int>(frees.size());
    // Columns: generators | frees+ | frees- | artificials.
    const int nreal = ng + 2 * nf;
    const int ncols = nreal + d;

    Tableau tb;
    tb.num_cols = ncols;
    tb.t.assign(d, RatVec(ncols + 1, Rat(0)));
    tb.basis.assign(d, 0);
    for (int i = 0; i < d; ++i) {
        const bool flip = target[i] < 0;
        auto put = [&](int j, const Rat& v) { tb.t[i][j] = flip ? -v : v; };
        for (int j = 0; j < ng; ++j) put(j, (*generators[j])[i]);
        for (int j = 0; j < nf; ++j) {
            put(ng + j, frees[j][i]);
            put(ng + nf + j, -frees[j][i]);
        }
        tb.t[i][nreal + i] = 1;
        tb.rhs(i) = flip ? -target[i] : target[i];
        tb.basis[i] = nreal + i;
    }
    // w-row = sum of rows (all artificials basic), expressed over non-basic cols.
    tb.wrow.assign(ncols + 1, Rat(0));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j <= ncols; ++j) tb.wrow[j] += tb.t[i][j];
    for (int i = 0; i < d; ++i) tb.wrow[nreal + i] = 0;

    // Phase 1. Dantzig pivoting while the objective makes progress; on a
    // degeneracy stall, switch permanently to Bland's rule, whose
    // anti-cycling guarantee ensures termination in exact arithmetic.
    bool bland = false;
    long stall = 0;
    Rat last_w = tb.wrow[ncols];
    for (;;) {
        int enter = -1;
        if (bland) {
            for (int j = 0; j < ncols; ++j) {
                if (tb.wrow[j] > 0) {
                    enter = j;
                    break;
                }
            }
        } else {
            for (int j = 0; j < ncols; ++j)
                if (tb.wrow[j] > 0 && (enter < 0 || tb.wrow[j] > tb.wrow[enter])) enter = j;
        }
        if (enter < 0) break;
        int leave = -1;
        Rat best;
        for (int i = 0; i < d; ++i) {
            if (tb.at(i, enter) <= 0) continue;
            Rat ratio = tb.rhs(i) / tb.at(i, enter);
            if (leave < 0 || ratio < best ||
                (ratio == best && tb.basis[i] < tb.basis[leave])) {
                best = ratio;
                leave = i;
            }
        }
        if (leave < 0)
            throw std::logic_error("conic_combination: unbounded phase-1 objective");
        pivot(tb, leave, enter, stats);
        if (!bland) {
            if (tb.wrow[ncols] < last_w) {
                last_w = tb.wrow[ncols];
                stall = 0;
            } else if (++stall > 2 * d + 8) {
                bland = true;
            }
        }
    }

    if (tb.wrow[ncols] != 0) {
        // Infeasible. Verify the Farkas certificate y: y*G <= 0, y*F = 0,
        // y*target > 0, read off the artificial columns of the w-row.
        RatVec y(d);
        for (int i = 0; i < d; ++i) {
            y[i] = tb.wrow[nreal + i] + 1;
            if (target[i] < 0) y[i] = -y[i];
        }
        Rat yt = 0;
        for (int i = 0; i < d; ++i) yt += y[i] * target[i];
        if (yt <= 0) throw std::logic_error("conic_combination: invalid Farkas certificate");
        for (const auto* g : generators) {
            Rat s = 0;
            for (int i = 0; i < d; ++i) s += y[i] * (*g)[i];
            if (s > 0) throw std::logic_error("conic_combination: invalid Farkas certificate");
        }
        for (const auto& f : frees) {
            Rat s = 0;
            for (int i = 0; i < d; ++i) s += y[i] * f[i];
            if (s != 0) throw std::logic_error("conic_combination: invalid Farkas certificate");
        }
        return {std::nullopt, std::move(y)};
    }

    ConicSolution sol;
    sol.lambda.assign(ng, Rat(0));
    sol.mu.assign(nf, Rat(0));
    for (int i = 0; i < d; ++i) {
        int b = tb.basis[i];
        if (b < ng)
            sol.lambda[b] = tb.rhs(i);
        else if (b < ng + nf)
            sol.mu[b - ng] += tb.rhs(i);
        else if (b < nreal)
            sol.mu[b - ng - nf] -= tb.rhs(i);
        // basic artificial at zero level: contributes nothing
    }
    // The combination must reproduce the target exactly.
    for (int i = 0; i < d; ++i) {
        Rat s = 0;
        for (int j = 0; j < ng; ++j) s += sol.lambda[j] * (*generators[j])[i];
        for (int j = 0; j < nf; ++j) s += sol.mu[j] * frees[j][i];
        if (s != target[i]) throw std::logic_error("conic_combination: solution check failed");
    }
    return {std::move(sol), {}};
}

}  // namespace

std::optional<ConicSolution> conic_combination(const RatMat& generators, const RatMat& frees,
                                               const RatVec& target, SimplexStats* stats) {
    std::vector<const RatVec*> cols;
    cols.reserve(generators.size());
    for (const auto& g : generators) cols.push_back(&g);
    auto res = conic_combination_direct(cols, frees, target, stats);
    return std::move(res.sol);
}

}  // namespace entrocone
