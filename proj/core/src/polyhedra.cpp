#include "entrocone/polyhedra.hpp"

#include <algorithm>
#include <cassert>
#include <thread>

namespace entrocone {

std::string coord_label(const Ground& g, Coord c) {
    if (c == kBudgetCoord) return "C";
    return "H(" + mask_label(g, static_cast<Mask>(c)) + ")";
}

int ConeH::coord_index(Coord c) const {
    auto it = std::lower_bound(coords.begin(), coords.end(), c);
    if (it == coords.end() || *it != c) return -1;
    return static_cast<int>(it - coords.begin());
}

ConeH cone_from_inequalities(const GroundPtr& ground,
                             const std::vector<LinearInequality>& constraints,
                             std::optional<std::vector<Coord>> coords) {
    ConeH cone;
    cone.ground = ground;
    bool any_budget = false;
    for (const auto& c : constraints)
        if (c.has_budget()) any_budget = true;
    if (coords) {
        cone.coords = *coords;
        std::sort(cone.coords.begin(), cone.coords.end());
        cone.coords.erase(std::unique(cone.coords.begin(), cone.coords.end()), cone.coords.end());
    } else {
        const Mask top = full_mask(ground->size());
        for (Mask m = 1; m <= top; ++m) cone.coords.push_back(m);
        if (any_budget) cone.coords.push_back(kBudgetCoord);
    }
    for (const auto& c : constraints) {
        if (c.bound() != 0)
            throw std::invalid_argument("cone_from_inequalities: homogeneous constraints only");
        LinearInequality n = normalize(c);
        RatVec row = inequality_to_row(cone, n);
        if (n.relation() == Relation::EQ)
            cone.eqs.push_back(std::move(row));
        else
            cone.ineqs.push_back(std::move(row));
    }
    return cone_canonical(cone);
}

RatVec inequality_to_row(const ConeH& cone, const LinearInequality& ineq) {
    LinearInequality n = ineq.relation() == Relation::LE ? ineq.negated() : ineq;
    if (n.bound() != 0)
        throw std::invalid_argument("inequality_to_row: affine bounds do not fit a cone");
    RatVec row(cone.coords.size(), Rat(0));
    for (const auto& [m, c] : n.terms()) {
        if (m == 0) {
            if (c != 0)
                throw std::invalid_argument("inequality_to_row: empty-set coordinate is pinned to 0");
            continue;
        }
        int idx = cone.coord_index(m);
        if (idx < 0)
            throw std::invalid_argument("inequality_to_row: term H(" + mask_label(*cone.ground, m) +
                                        ") outside the cone's coordinates");
        row[idx] = c;
    }
    if (n.budget() != 0) {
        int idx = cone.coord_index(kBudgetCoord);
        if (idx < 0) throw std::invalid_argument("inequality_to_row: cone has no budget coordinate");
        // terms >= budget*C  <=>  terms - budget*C >= 0
        row[idx] = -n.budget();
    }
    return row;
}

LinearInequality row_to_inequality(const ConeH& cone, const RatVec& row, bool equality) {
    LinearInequality out(cone.ground);
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (row[i] == 0) continue;
        if (cone.coords[i] == kBudgetCoord)
            out.set_budget(-row[i]);
        else
            out.set_coeff(static_cast<Mask>(cone.coords[i]), row[i]);
    }
    out.set_relation(equality ? Relation::EQ : Relation::GE);
    return normalize(out);
}

std::vector<LinearInequality> cone_inequalities(const ConeH& cone) {
    std::vector<LinearInequality> out;
    out.reserve(cone.ineqs.size() + cone.eqs.size());
    for (const auto& r : cone.ineqs) out.push_back(row_to_inequality(cone, r, false));
    for (const auto& r : cone.eqs) out.push_back(row_to_inequality(cone, r, true));
    return out;
}

namespace {

bool row_is_zero(const RatVec& r) {
    for (const auto& x : r)
        if (x != 0) return false;
    return true;
}

void sort_unique_rows(RatMat& rows) {
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
}

Rat dot(const RatVec& a, const RatVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

ConeH cone_canonical(const ConeH& cone) {
    ConeH out = cone;
    for (auto& r : out.ineqs) make_primitive(r);
    out.ineqs.erase(std::remove_if(out.ineqs.begin(), out.ineqs.end(), row_is_zero),
                    out.ineqs.end());
    sort_unique_rows(out.ineqs);
    for (auto& r : out.eqs) {
        make_primitive(r);
        for (const auto& x : r) {
            if (x == 0) continue;
            if (x < 0)
                for (auto& y : r) y = -y;
            break;
        }
    }
    out.eqs.erase(std::remove_if(out.eqs.begin(), out.eqs.end(), row_is_zero), out.eqs.end());
    sort_unique_rows(out.eqs);
    return out;
}

// --- certificates ------------------------------------------------------------

LinearInequality certificate_sum(const std::vector<LinearInequality>& constraints,
                                 const Certificate& cert) {
    LinearInequality acc;
    bool first = true;
    for (const auto& term : cert.terms) {
        if (term.index < 0 || term.index >= static_cast<int>(constraints.size()))
            throw std::invalid_argument("certificate_sum: constraint index out of range");
        const LinearInequality& c = constraints[term.index];
        if (c.relation() != Relation::EQ && term.multiplier < 0)
            throw std::invalid_argument("certificate_sum: negative multiplier on an inequality");
        LinearInequality oriented = c.relation() == Relation::LE ? c.negated() : c;
        if (first) {
            acc = LinearInequality(oriented.ground());
            first = false;
        }
        acc.add_scaled(oriented, term.multiplier);
    }
    acc.set_relation(Relation::GE);
    return acc;
}

bool certificate_verifies(const std::vector<LinearInequality>& constraints,
                          const Certificate& cert, const LinearInequality& target) {
    LinearInequality sum = certificate_sum(constraints, cert);
    LinearInequality t = target.relation() == Relation::LE ? target.negated() : target;
    if (t.relation() == Relation::EQ)
        throw std::invalid_argument("certificate_verifies: equality targets are not supported");
    return sum.terms() == t.terms() && sum.bound() == t.bound() && sum.budget() == t.budget();
}

// --- equality substitution -----------------------------------------------------

SubstituteResult substitute_equalities(const ConeH& cone,
                                       const std::optional<std::set<Coord>>& allowed) {
    ConeH canon = cone_canonical(cone);
    const int d = canon.dim();

    std::vector<int> pivot_col;
    std::vector<RatVec> pivot_row;

    auto reduce = [&](RatVec& r) {
        for (std::size_t k = 0; k < pivot_col.size(); ++k) {
            int c = pivot_col[k];
            if (r[c] == 0) continue;
            Rat f = r[c] / pivot_row[k][c];
            for (int j = 0; j < d; ++j) r[j] -= f * pivot_row[k][j];
        }
    };

    std::vector<RatVec> residual;
    for (auto eq : canon.eqs) {
        reduce(eq);
        if (row_is_zero(eq)) continue;
        // Pivot on the largest allowed coordinate present (the deep joint
        // entropies are the ones worth removing first).
        int best = -1;
        for (int j = 0; j < d; ++j) {
            if (eq[j] == 0 || canon.coords[j] == kBudgetCoord) continue;
            if (allowed && !allowed->count(canon.coords[j])) continue;
            best = j;
        }
        if (best < 0) {
            residual.push_back(std::move(eq));
        } else {
            pivot_col.push_back(best);
            pivot_row.push_back(std::move(eq));
        }
    }
    for (auto& r : residual) reduce(r);

    std::vector<bool> keep(d, true);
    for (int c : pivot_col) keep[c] = false;

    SubstituteResult out;
    out.cone.ground = canon.ground;
    for (int j = 0; j < d; ++j)
        if (keep[j]) out.cone.coords.push_back(canon.coords[j]);

    auto project = [&](RatVec r) {
        reduce(r);
        RatVec s;
        s.reserve(out.cone.coords.size());
        for (int j = 0; j < d; ++j)
            if (keep[j]) s.push_back(r[j]);
        return s;
    };
    for (const auto& r : canon.ineqs) out.cone.ineqs.push_back(project(r));
    for (const auto& r : residual) out.cone.eqs.push_back(project(r));

    for (std::size_t k = 0; k < pivot_col.size(); ++k) {
        std::map<Coord, Rat> expr;
        const RatVec& pr = pivot_row[k];
        int c = pivot_col[k];
        for (int j = 0; j < d; ++j) {
            if (j == c || pr[j] == 0) continue;
            expr[canon.coords[j]] = -pr[j] / pr[c];
        }
        out.subst.pivots.emplace_back(canon.coords[c], std::move(expr));
    }
    out.cone = cone_canonical(out.cone);
    return out;
}

// --- redundancy removal ---------------------------------------------------------

namespace {

// Alive flags for a canonical (primitive, sorted, unique, nonzero) matrix.
// First-kept scan: a row implied by the other alive rows plus the equality
// span is removed for good.
std::vector<bool> redundancy_scan(const RatMat& rows, const RatMat& eqs, PolyStats* stats) {
    const std::size_t n = rows.size();
    std::vector<bool> alive(n, true);
    if (n == 0) return alive;
    const int d = static_cast<int>(rows[0].size());

    std::vector<int> count(d, 0);
    std::vector<bool> eq_touches(d, false);
    for (const auto& r : rows)
        for (int j = 0; j < d; ++j)
            if (r[j] != 0) ++count[j];
    for (const auto& e : eqs)
        for (int j = 0; j < d; ++j)
            if (e[j] != 0) eq_touches[j] = true;

    SimplexStats lp;
    for (std::size_t i = 0; i < n; ++i) {
        // Sole supporter of a coordinate no equality touches: keep for free.
        bool forced = false;
        for (int j = 0; j < d && !forced; ++j)
            if (rows[i][j] != 0 && count[j] == 1 && !eq_touches[j]) forced = true;
        if (forced) continue;

        RatMat gens;
        gens.reserve(n - 1);
        for (std::size_t k = 0; k < n; ++k)
            if (k != i && alive[k]) gens.push_back(rows[k]);
        if (conic_combination(gens, eqs, rows[i], &lp)) {
            alive[i] = false;
            for (int j = 0; j < d; ++j)
                if (rows[i][j] != 0) --count[j];
        }
    }
    if (stats) stats->lp_calls += lp.calls;
    return alive;
}

}  // namespace

ConeH remove_redundant(const ConeH& cone, PolyStats* stats) {
    ConeH out = cone_canonical(cone);
    auto alive = redundancy_scan(out.ineqs, out.eqs, stats);
    RatMat kept;
    for (std::size_t i = 0; i < out.ineqs.size(); ++i)
        if (alive[i]) kept.push_back(out.ineqs[i]);
    out.ineqs = std::move(kept);
    return out;
}

namespace {

// defined with the double-description machinery below
RatMat dd_rays(const RatMat& ineqs_in, const RatMat& eqs_in, int dim, int dim_cap,
               std::size_t max_rays = 200000);

struct DDProjection {
    RatMat ineqs;
    RatMat eqs;
};

// Projects a pointed cone onto the coordinates `keep_idx` through its
// V-representation: rays project by dropping components, the facets of their
// conic hull come from a second (dual) double-description run, and rank
// deficiency surfaces as output equalities.
DDProjection dd_project(const RatMat& ineqs, const RatMat& eqs, int dim,
                        const std::vector<int>& keep_idx, std::size_t max_rays = 200000) {
    RatMat rays = dd_rays(ineqs, eqs, dim, dim, max_rays);
    const int kd = static_cast<int>(keep_idx.size());
    RatMat prj;
    for (const auto& r : rays) {
        RatVec v(kd);
        for (int i = 0; i < kd; ++i) v[i] = r[keep_idx[i]];
        make_primitive(v);
        bool zero = true;
        for (const auto& x : v)
            if (x != 0) zero = false;
        if (!zero) prj.push_back(std::move(v));
    }
    std::sort(prj.begin(), prj.end());
    prj.erase(std::unique(prj.begin(), prj.end()), prj.end());

    DDProjection out;
    if (prj.empty()) {
        for (int i = 0; i < kd; ++i) {
            RatVec e(kd, Rat(0));
            e[i] = 1;
            out.eqs.push_back(std::move(e));
        }
        return out;
    }
    // equalities: normals orthogonal to the whole ray span
    for (auto n : nullspace_basis(prj, kd)) {
        make_primitive(n);
        out.eqs.push_back(std::move(n));
    }
    // independent coordinate set of the span
    RatMat reduced_for_rank = prj;
    auto pivots = rref(reduced_for_rank);
    const int rk = static_cast<int>(pivots.size());
    RatMat rays_p;
    rays_p.reserve(prj.size());
    for (const auto& r : prj) {
        RatVec v(rk);
        for (int i = 0; i < rk; ++i) v[i] = r[pivots[i]];
        rays_p.push_back(std::move(v));
    }
    // facets of cone(rays) = extreme rays of the dual cone
    RatMat facets_p = dd_rays(rays_p, {}, rk, rk);
    for (const auto& f : facets_p) {
        RatVec n(kd, Rat(0));
        for (int i = 0; i < rk; ++i) n[pivots[i]] = f[i];
        out.ineqs.push_back(std::move(n));
    }
    std::sort(out.ineqs.begin(), out.ineqs.end());
    return out;
}

}  // namespace

// --- Fourier-Motzkin -------------------------------------------------------------

namespace {

using BitSet = std::vector<std::uint64_t>;

int bits_popcount(const BitSet& a) {
    int c = 0;
    for (auto w : a) c += std::popcount(w);
    return c;
}

void bit_set(BitSet& a, std::size_t i) { a[i / 64] |= std::uint64_t(1) << (i % 64); }

struct FmRow {
    RatVec a;
    BitSet anc;
};

void dedupe_fm_rows(std::vector<FmRow>& rows) {
    std::sort(rows.begin(), rows.end(), [](const FmRow& x, const FmRow& y) {
        if (x.a != y.a) return x.a < y.a;
        return x.anc < y.anc;
    });
    rows.erase(std::unique(rows.begin(), rows.end(),
                           [](const FmRow& x, const FmRow& y) { return x.a == y.a; }),
               rows.end());
}

void lp_prune(std::vector<FmRow>& rows, const RatMat& eqs, PolyStats* stats) {
    dedupe_fm_rows(rows);  // primitive + sorted + unique; zero rows never enter
    RatMat mat;
    mat.reserve(rows.size());
    for (const auto& r : rows) mat.push_back(r.a);
    auto alive = redundancy_scan(mat, eqs, stats);
    std::vector<FmRow> kept;
    kept.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (alive[i]) kept.push_back(std::move(rows[i]));
    rows = std::move(kept);
}

}  // namespace

ConeH fm_eliminate(const ConeH& cone, const std::vector<Coord>& drop, const FmOptions& opts) {
    ConeH canon = cone_canonical(cone);
    std::set<Coord> dropset(drop.begin(), drop.end());
    for (Coord c : dropset) {
        if (c == kBudgetCoord)
            throw std::invalid_argument("fm_eliminate: the budget coordinate is never eliminated");
        if (canon.coord_index(c) < 0)
            throw std::invalid_argument("fm_eliminate: unknown coordinate");
    }
    for (const auto& e : canon.eqs)
        for (std::size_t j = 0; j < e.size(); ++j)
            if (e[j] != 0 && dropset.count(canon.coords[j]))
                throw std::invalid_argument(
                    "fm_eliminate: an equality mentions a dropped coordinate; "
                    "run substitute_equalities first");

    std::vector<Coord> coords = canon.coords;
    RatMat eqs = canon.eqs;

    const std::size_t n0 = canon.ineqs.size();
    const std::size_t anc_words = (n0 + 63) / 64;
    std::vector<FmRow> rows(n0);
    for (std::size_t i = 0; i < n0; ++i) {
        rows[i].a = canon.ineqs[i];
        rows[i].anc.assign(anc_words, 0);
        bit_set(rows[i].anc, i);
    }

    int workers = opts.workers > 0 ? opts.workers
                                   : static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;

    int eliminated = 0;
    int since_prune = 0;
    // Ray-based finish: attempted once at entry for moderate dimensions and
    // once more if pairwise elimination brings the system below the switch
    // dimension. A failed attempt (non-pointed cone, ray blowup) disables it.
    bool dd_allowed = opts.dd_switch_dim > 0;
    bool dd_entry = true;
    while (!dropset.empty()) {
        const int cur_dim = static_cast<int>(coords.size());
        const int trigger = dd_entry ? opts.dd_switch_dim + 6 : opts.dd_switch_dim;
        if (dd_allowed && cur_dim <= trigger) {
            dd_allowed = dd_entry;  // one mid-run retry at the lower threshold
            dd_entry = false;
            std::vector<int> keep_idx;
            std::vector<Coord> keep_coords;
            for (std::size_t j = 0; j < coords.size(); ++j) {
                if (!dropset.count(coords[j])) {
                    keep_idx.push_back(static_cast<int>(j));
                    keep_coords.push_back(coords[j]);
                }
            }
            RatMat mat;
            mat.reserve(rows.size());
            for (const auto& r : rows) mat.push_back(r.a);
            bool switched = false;
            try {
                auto pr = dd_project(mat, eqs, cur_dim, keep_idx, 50000);
                coords = keep_coords;
                eqs = std::move(pr.eqs);
                rows.clear();
                for (auto& r : pr.ineqs) rows.push_back({std::move(r), {}});
                dropset.clear();
                switched = true;
            } catch (const std::runtime_error&) {
                // not pointed (or capped): fall back to pairwise elimination
            }
            if (switched) {
                if (opts.stats) opts.stats->note_count(rows.size());
                break;
            }
        }
        int best_idx = -1;
        long best_score = 0;
        for (std::size_t j = 0; j < coords.size(); ++j) {
            if (!dropset.count(coords[j])) continue;
            long pos = 0, neg = 0;
            for (const auto& r : rows) {
                if (r.a[j] > 0)
                    ++pos;
                else if (r.a[j] < 0)
                    ++neg;
            }
            long score = pos * neg;
            if (best_idx < 0 || score < best_score) {
                best_idx = static_cast<int>(j);
                best_score = score;
            }
        }
        const int col = best_idx;
        dropset.erase(coords[col]);
        ++eliminated;
        // Kohler bound: a row combining more than e+1 of the run's input rows
        // after e eliminations is redundant in the derived system.
        const int kohler_bound = eliminated + 1;

        std::vector<const FmRow*> pos, neg;
        std::vector<FmRow> next;
        for (auto& r : rows) {
            if (r.a[col] > 0)
                pos.push_back(&r);
            else if (r.a[col] < 0)
                neg.push_back(&r);
            else
                next.push_back(r);
        }
        if (opts.stats) opts.stats->fm_pairs += static_cast<long>(pos.size() * neg.size());

        const std::size_t npairs = pos.size() * neg.size();
        auto combine_range = [&](std::size_t lo, std::size_t hi, std::vector<FmRow>& out) {
            for (std::size_t k = lo; k < hi; ++k) {
                const FmRow& p = *pos[k / neg.size()];
                const FmRow& q = *neg[k % neg.size()];
                BitSet anc(anc_words);
                for (std::size_t w = 0; w < anc_words; ++w) anc[w] = p.anc[w] | q.anc[w];
                if (bits_popcount(anc) > kohler_bound) continue;
                FmRow womb;
                womb.a.resize(coords.size());
                const Rat pc = p.a[col];
                const Rat qc = -q.a[col];
                for (std::size_t j = 0; j < coords.size(); ++j)
                    womb.a[j] = qc * p.a[j] + pc * q.a[j];
                make_primitive(womb.a);
                if (row_is_zero(womb.a)) continue;
                womb.anc = std::move(anc);
                out.push_back(std::move(womb));
            }
        };

        if (workers == 1 || npairs < 256) {
            combine_range(0, npairs, next);
        } else {
            std::vector<std::vector<FmRow>> parts(workers);
            std::vector<std::thread> threads;
            std::size_t chunk = (npairs + workers - 1) / workers;
            for (int w = 0; w < workers; ++w) {
                std::size_t lo = w * chunk;
                std::size_t hi = std::min(npairs, lo + chunk);
                if (lo >= hi) break;
                threads.emplace_back([&combine_range, &parts, lo, hi, w] {
                    combine_range(lo, hi, parts[w]);
                });
            }
            for (auto& t : threads) t.join();
            for (auto& part : parts)
                for (auto& r : part) next.push_back(std::move(r));
        }

        for (auto& r : next) r.a.erase(r.a.begin() + col);
        for (auto& e : eqs) e.erase(e.begin() + col);
        coords.erase(coords.begin() + col);

        dedupe_fm_rows(next);
        rows = std::move(next);
        if (opts.stats) opts.stats->note_count(rows.size());
        if (rows.size() > opts.max_ineqs)
            throw ResourceError("fm_eliminate: intermediate inequality cap exceeded", rows.size());

        if (++since_prune >= opts.prune_every && !dropset.empty()) {
            lp_prune(rows, eqs, opts.stats);
            since_prune = 0;
        }
    }

    ConeH out;
    out.ground = canon.ground;
    out.coords = coords;
    for (auto& r : rows) out.ineqs.push_back(std::move(r.a));
    out.eqs = eqs;
    return cone_canonical(out);
}

// --- implication ------------------------------------------------------------------

std::optional<Certificate> implies(const ConeH& cone, const LinearInequality& target,
                                   PolyStats* stats) {
    LinearInequality t = target.relation() == Relation::LE ? target.negated() : target;
    if (t.relation() == Relation::EQ)
        throw std::invalid_argument("implies: split equality targets into two inequalities");
    RatVec trow = inequality_to_row(cone, t);

    SimplexStats lp;
    auto sol = conic_combination(cone.ineqs, cone.eqs, trow, &lp);
    if (stats) stats->lp_calls += lp.calls;
    if (!sol) return std::nullopt;
    Certificate cert;
    for (std::size_t i = 0; i < sol->lambda.size(); ++i)
        if (sol->lambda[i] != 0) cert.terms.push_back({static_cast<int>(i), sol->lambda[i]});
    for (std::size_t j = 0; j < sol->mu.size(); ++j)
        if (sol->mu[j] != 0)
            cert.terms.push_back({static_cast<int>(cone.ineqs.size() + j), sol->mu[j]});
    return cert;
}

std::optional<RatVec> in_conic_hull(const RatMat& generators, const RatVec& target,
                                    PolyStats* stats) {
    SimplexStats lp;
    auto sol = conic_combination(generators, {}, target, &lp);
    if (stats) stats->lp_calls += lp.calls;
    if (!sol) return std::nullopt;
    return sol->lambda;
}

bool cone_section_feasible(const ConeH& cone, const std::vector<Coord>& at, const RatVec& values,
                           PolyStats* stats) {
    if (at.size() != values.size())
        throw std::invalid_argument("cone_section_feasible: coordinate/value size mismatch");
    // Find x free with I x - s = 0 (s >= 0), E x = 0 and x[at] = values:
    // stack the rows of I, E and the coordinate selectors; the x_j become
    // free columns, the slacks s become generators.
    const int d = cone.dim();
    const int ni = static_cast<int>(cone.ineqs.size());
    const int ne = static_cast<int>(cone.eqs.size());
    const int na = static_cast<int>(at.size());
    const int rows = ni + ne + na;

    RatMat frees(d, RatVec(rows, Rat(0)));  // one column per coordinate of x
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < ni; ++i) frees[j][i] = cone.ineqs[i][j];
        for (int i = 0; i < ne; ++i) frees[j][ni + i] = cone.eqs[i][j];
    }
    for (int k = 0; k < na; ++k) {
        int idx = cone.coord_index(at[k]);
        if (idx < 0) throw std::invalid_argument("cone_section_feasible: unknown coordinate");
        frees[idx][ni + ne + k] = 1;
    }
    RatMat gens(ni, RatVec(rows, Rat(0)));  // slack column per inequality
    for (int i = 0; i < ni; ++i) gens[i][i] = -1;

    RatVec target(rows, Rat(0));
    for (int k = 0; k < na; ++k) target[ni + ne + k] = values[k];

    SimplexStats lp;
    auto sol = conic_combination(gens, frees, target, &lp);
    if (stats) stats->lp_calls += lp.calls;
    return sol.has_value();
}

// --- double description ------------------------------------------------------------

namespace {

struct DDRay {
    RatVec v;
    BitSet sat;  // saturated processed constraint passes
};

bool sat_superset(const BitSet& big, const BitSet& small) {
    for (std::size_t i = 0; i < big.size(); ++i)
        if ((small[i] & ~big[i]) != 0) return false;
    return true;
}

// Extreme rays of {x : I x >= 0, E x = 0}; throws if the cone contains a line
// or the intermediate ray count exceeds max_rays.
RatMat dd_rays(const RatMat& ineqs_in, const RatMat& eqs_in, int dim, int dim_cap,
               std::size_t max_rays) {
    if (dim > dim_cap) throw ResourceError("extreme_rays: dimension cap exceeded", dim);

    struct Cons {
        RatVec a;
        bool eq;
    };
    std::vector<Cons> cons;
    for (const auto& e : eqs_in) cons.push_back({e, true});
    for (const auto& r : ineqs_in) cons.push_back({r, false});
    std::vector<bool> processed(cons.size(), false);

    // One saturation bit per processed inequality pass (equalities use two).
    const std::size_t sat_words = (2 * cons.size() + 63) / 64;
    std::size_t bits_used = 0;

    RatMat L;
    for (int i = 0; i < dim; ++i) {
        RatVec e(dim, Rat(0));
        e[i] = 1;
        L.push_back(std::move(e));
    }
    std::vector<DDRay> R;

    // Phase A: pivot constraints against the lineality space until it is gone.
    bool progress = true;
    while (progress && !L.empty()) {
        progress = false;
        for (std::size_t ci = 0; ci < cons.size() && !L.empty(); ++ci) {
            if (processed[ci]) continue;
            const RatVec& a = cons[ci].a;
            int pl = -1;
            for (std::size_t k = 0; k < L.size(); ++k)
                if (dot(a, L[k]) != 0) {
                    pl = static_cast<int>(k);
                    break;
                }
            if (pl < 0) continue;
            RatVec l = L[pl];
            Rat al = dot(a, l);
            if (al < 0 && !cons[ci].eq) {
                for (auto& x : l) x = -x;
                al = -al;
            }
            L.erase(L.begin() + pl);
            for (auto& l2 : L) {
                Rat f = dot(a, l2) / al;
                if (f == 0) continue;
                for (int j = 0; j < dim; ++j) l2[j] -= f * l[j];
            }
            for (auto& r : R) {
                Rat f = dot(a, r.v) / al;
                if (f == 0) continue;
                for (int j = 0; j < dim; ++j) r.v[j] -= f * l[j];
                make_primitive(r.v);
            }
            if (!cons[ci].eq) {
                // Every earlier pivot constraint annihilates l, so the new ray
                // saturates all previous passes and only misses this one.
                std::size_t bit = bits_used++;
                for (auto& r : R) bit_set(r.sat, bit);
                DDRay nr;
                make_primitive(l);
                nr.v = std::move(l);
                nr.sat.assign(sat_words, 0);
                for (std::size_t b = 0; b < bit; ++b) bit_set(nr.sat, b);
                R.push_back(std::move(nr));
            }
            processed[ci] = true;
            progress = true;
        }
    }
    if (!L.empty())
        throw std::runtime_error("extreme_rays: cone is not pointed (contains a line)");

    // Phase B: standard double-description refinement.
    for (std::size_t ci = 0; ci < cons.size(); ++ci) {
        if (processed[ci]) continue;
        const int passes = cons[ci].eq ? 2 : 1;
        for (int pass = 0; pass < passes; ++pass) {
            RatVec a = cons[ci].a;
            if (pass == 1)
                for (auto& x : a) x = -x;
            std::vector<DDRay> pos, zero, neg;
            for (auto& r : R) {
                Rat s = dot(a, r.v);
                if (s > 0)
                    pos.push_back(std::move(r));
                else if (s == 0)
                    zero.push_back(std::move(r));
                else
                    neg.push_back(std::move(r));
            }
            const std::size_t bit = bits_used++;
            std::vector<const DDRay*> current;
            for (const auto& r : pos) current.push_back(&r);
            for (const auto& r : zero) current.push_back(&r);
            for (const auto& r : neg) current.push_back(&r);

            std::vector<DDRay> next;
            for (auto& p : pos)
                for (auto& q : neg) {
                    BitSet z(sat_words);
                    for (std::size_t w = 0; w < sat_words; ++w) z[w] = p.sat[w] & q.sat[w];
                    bool adjacent = true;
                    for (const DDRay* r : current) {
                        if (r == &p || r == &q) continue;
                        if (sat_superset(r->sat, z)) {
                            adjacent = false;
                            break;
                        }
                    }
                    if (!adjacent) continue;
                    DDRay combo;
                    combo.v.resize(dim);
                    Rat sp = dot(a, p.v), sq = -dot(a, q.v);
                    for (int j = 0; j < dim; ++j) combo.v[j] = sq * p.v[j] + sp * q.v[j];
                    make_primitive(combo.v);
                    if (row_is_zero(combo.v)) continue;
                    combo.sat = z;
                    bit_set(combo.sat, bit);
                    next.push_back(std::move(combo));
                }
            for (auto& r : zero) {
                bit_set(r.sat, bit);
                next.push_back(std::move(r));
            }
            // Strictly positive rays survive an inequality and the first pass
            // of an equality; the flipped second pass then removes them.
            if (!cons[ci].eq || pass == 0)
                for (auto& r : pos) next.push_back(std::move(r));
            R = std::move(next);
            if (R.size() > max_rays)
                throw ResourceError("extreme_rays: ray cap exceeded", R.size());
        }
        processed[ci] = true;
    }

    RatMat rays;
    for (auto& r : R) rays.push_back(std::move(r.v));
    std::sort(rays.begin(), rays.end());
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
    return rays;
}

}  // namespace

VRep extreme_rays(const ConeH& cone, int dim_cap, PolyStats*) {
    ConeH canon = cone_canonical(cone);
    VRep v;
    v.ground = canon.ground;
    v.coords = canon.coords;
    v.directions = dd_rays(canon.ineqs, canon.eqs, canon.dim(), dim_cap);
    return v;
}

RawVRep extreme_rays_affine(const AffineSystem& sys, int dim_cap) {
    if (sys.rows.size() != sys.rhs.size())
        throw std::invalid_argument("extreme_rays_affine: row/rhs size mismatch");
    const int dim = sys.rows.empty() ? 0 : static_cast<int>(sys.rows[0].size());
    RatMat hom;
    for (std::size_t i = 0; i < sys.rows.size(); ++i) {
        RatVec r = sys.rows[i];
        r.push_back(-sys.rhs[i]);
        hom.push_back(std::move(r));
    }
    RatVec x0(dim + 1, Rat(0));
    x0[dim] = 1;
    hom.push_back(std::move(x0));
    RatMat rays = dd_rays(hom, {}, dim + 1, dim_cap + 1);
    RawVRep out;
    for (const auto& r : rays) {
        if (r[dim] == 0) {
            out.directions.emplace_back(r.begin(), r.begin() + dim);
        } else {
            RatVec p(dim);
            for (int j = 0; j < dim; ++j) p[j] = r[j] / r[dim];
            out.points.push_back(std::move(p));
        }
    }
    std::sort(out.points.begin(), out.points.end());
    std::sort(out.directions.begin(), out.directions.end());
    return out;
}

// --- facet test ----------------------------------------------------------------------

int polyhedron_dim(const RatMat& points, const RatMat& directions) {
    RatMat m;
    if (!points.empty()) {
        for (std::size_t i = 1; i < points.size(); ++i) {
            RatVec d(points[i].size());
            for (std::size_t j = 0; j < d.size(); ++j) d[j] = points[i][j] - points[0][j];
            m.push_back(std::move(d));
        }
    }
    for (const auto& v : directions) m.push_back(v);
    return m.empty() ? 0 : rank(m);
}

FacetDecision is_facet_raw(const RatMat& points, const RatMat& directions, const RatVec& normal,
                           const Rat& rhs, int ambient_dim) {
    RatMat sat_points, sat_dirs;
    for (const auto& p : points) {
        Rat s = dot(normal, p) - rhs;
        if (s < 0)
            throw std::invalid_argument(
                "is_facet: a point of the V-representation violates the inequality");
        if (s == 0) sat_points.push_back(p);
    }
    for (const auto& v : directions) {
        Rat s = dot(normal, v);
        if (s < 0)
            throw std::invalid_argument(
                "is_facet: a direction of the V-representation violates the inequality");
        if (s == 0) sat_dirs.push_back(v);
    }
    FacetDecision out;
    if (!points.empty()) {
        // A half-line belongs to the face only if its base point does; with no
        // saturating extreme point the exposed face is empty.
        if (sat_points.empty()) {
            out.face_dim = -1;
            out.facet = false;
            return out;
        }
        out.face_dim = polyhedron_dim(sat_points, sat_dirs);
    } else {
        out.face_dim = polyhedron_dim({}, sat_dirs);  // face through the apex
    }
    out.facet = out.face_dim == ambient_dim - 1;
    return out;
}

FacetDecision is_facet(const VRep& v, const LinearInequality& ineq, int ambient_dim) {
    LinearInequality n = ineq.relation() == Relation::LE ? ineq.negated() : ineq;
    if (n.relation() == Relation::EQ)
        throw std::invalid_argument("is_facet: equality is not a face-inducing inequality");
    ConeH shim;
    shim.ground = v.ground;
    shim.coords = v.coords;
    Rat rhs = n.bound();
    LinearInequality hom = n;
    hom.set_bound(0);
    RatVec normal = inequality_to_row(shim, hom);
    return is_facet_raw(v.points, v.directions, normal, rhs, ambient_dim);
}

}  // namespace entrocone
