#include "entrocone/marginal.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "entrocone/sha256.hpp"
#include "entrocone/shannon.hpp"

namespace entrocone {

bool MarginalScenario::has_context(Mask m) const {
    return std::binary_search(contexts.begin(), contexts.end(), m);
}

std::vector<Mask> MarginalScenario::maximal_contexts() const {
    std::vector<Mask> out;
    for (Mask m : contexts) {
        bool maximal = true;
        for (Mask other : contexts)
            if (other != m && subset_of(m, other)) maximal = false;
        if (maximal) out.push_back(m);
    }
    return out;
}

MarginalScenario scenario_from_contexts(const GroundPtr& observables,
                                        const std::vector<Mask>& maximal) {
    MarginalScenario s;
    s.ground = observables;
    std::set<Mask> closure;
    for (Mask m : maximal) {
        if (m & ~full_mask(observables->size()))
            throw std::invalid_argument("scenario: context outside the ground set");
        // all nonempty subsets of m
        for (Mask sub = m; sub != 0; sub = (sub - 1) & m) closure.insert(sub);
    }
    s.contexts.assign(closure.begin(), closure.end());
    return s;
}

MarginalScenario bell_scenario(const std::vector<int>& settings_per_party) {
    const int parties = static_cast<int>(settings_per_party.size());
    if (parties < 2) throw std::invalid_argument("bell_scenario: need at least 2 parties");
    std::vector<std::string> names;
    std::vector<std::vector<int>> party_vars(parties);
    int idx = 0;
    for (int p = 0; p < parties; ++p) {
        if (settings_per_party[p] < 1)
            throw std::invalid_argument("bell_scenario: need at least 1 setting per party");
        for (int sgt = 0; sgt < settings_per_party[p]; ++sgt) {
            names.push_back(party_letter(p) + std::to_string(sgt));
            party_vars[p].push_back(idx++);
        }
    }
    auto g = make_ground(names);
    // maximal contexts: one observable per party
    std::vector<Mask> maximal;
    std::vector<int> pick(parties, 0);
    for (;;) {
        Mask m = 0;
        for (int p = 0; p < parties; ++p) m |= Mask(1) << party_vars[p][pick[p]];
        maximal.push_back(m);
        int p = parties - 1;
        while (p >= 0 && ++pick[p] == settings_per_party[p]) pick[p--] = 0;
        if (p < 0) break;
    }
    auto s = scenario_from_contexts(g, maximal);
    s.parties = party_vars;
    return s;
}

// --- symmetries -----------------------------------------------------------------

namespace {

void all_permutations(int n, std::vector<std::vector<int>>& out) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    do {
        out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
}

Mask apply_perm(const std::vector<int>& perm, Mask m) {
    Mask out = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        if (m & (Mask(1) << i)) out |= Mask(1) << perm[i];
    return out;
}

LinearInequality apply_perm(const std::vector<int>& perm, const LinearInequality& ineq) {
    LinearInequality out(ineq.ground());
    for (const auto& [m, c] : ineq.terms()) out.set_coeff(apply_perm(perm, m), c);
    out.set_relation(ineq.relation());
    out.set_bound(ineq.bound());
    out.set_budget(ineq.budget());
    return out;
}

}  // namespace

std::vector<std::vector<int>> scenario_symmetries(const MarginalScenario& s) {
    const int nvars = s.ground->size();
    std::vector<int> identity(nvars);
    for (int i = 0; i < nvars; ++i) identity[i] = i;
    if (s.parties.empty()) return {identity};

    const int P = static_cast<int>(s.parties.size());
    // per-party setting permutations
    std::vector<std::vector<std::vector<int>>> setting_perms(P);
    for (int p = 0; p < P; ++p)
        all_permutations(static_cast<int>(s.parties[p].size()), setting_perms[p]);
    // party permutations preserving arity
    std::vector<std::vector<int>> party_perms;
    {
        std::vector<int> pp(P);
        for (int i = 0; i < P; ++i) pp[i] = i;
        do {
            bool ok = true;
            for (int p = 0; p < P; ++p)
                if (s.parties[pp[p]].size() != s.parties[p].size()) ok = false;
            if (ok) party_perms.push_back(pp);
        } while (std::next_permutation(pp.begin(), pp.end()));
    }

    std::vector<std::vector<int>> group;
    std::vector<int> choice(P, 0);
    for (const auto& pp : party_perms) {
        std::fill(choice.begin(), choice.end(), 0);
        for (;;) {
            std::vector<int> perm(nvars);
            for (int p = 0; p < P; ++p) {
                const auto& sigma = setting_perms[p][choice[p]];
                for (std::size_t k = 0; k < s.parties[p].size(); ++k)
                    perm[s.parties[p][k]] = s.parties[pp[p]][sigma[k]];
            }
            group.push_back(std::move(perm));
            int p = P - 1;
            while (p >= 0 && ++choice[p] == static_cast<int>(setting_perms[p].size()))
                choice[p--] = 0;
            if (p < 0) break;
        }
    }
    std::sort(group.begin(), group.end());
    group.erase(std::unique(group.begin(), group.end()), group.end());
    return group;
}

std::vector<LinearInequality> scenario_elementals(const MarginalScenario& scenario) {
    std::vector<LinearInequality> out;
    for (Mask ctx : scenario.maximal_contexts())
        for (auto& e : elemental_inequalities_subset(scenario.ground, ctx))
            out.push_back(std::move(e));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<InequalityClass> classify(const std::vector<LinearInequality>& ineqs,
                                      const MarginalScenario& scenario, PolyStats* stats) {
    auto group = scenario_symmetries(scenario);

    // Trivial = implied by per-context elementals (with a free C >= 0 axiom so
    // "observable expression <= C" forms classify correctly).
    std::vector<Coord> coords;
    for (Mask m : scenario.contexts) coords.push_back(m);
    coords.push_back(kBudgetCoord);
    auto trivial_constraints = scenario_elementals(scenario);
    {
        LinearInequality cpos(scenario.ground);
        cpos.set_relation(Relation::GE);
        cpos.set_budget(-1);  // reads: 0 >= -C, i.e. C >= 0
        trivial_constraints.push_back(cpos);
    }
    ConeH trivial_cone = cone_from_inequalities(scenario.ground, trivial_constraints, coords);

    std::map<LinearInequality, InequalityClass> by_rep;
    for (const auto& raw : ineqs) {
        if (raw.ground() != scenario.ground && !(*raw.ground() == *scenario.ground))
            throw std::invalid_argument("classify: inequality over a different ground set");
        std::set<LinearInequality> orbit;
        for (const auto& perm : group) orbit.insert(normalize(apply_perm(perm, raw)));
        InequalityClass cls;
        cls.representative = *orbit.begin();
        cls.orbit_size = static_cast<int>(orbit.size());
        cls.trivial = implies(trivial_cone, cls.representative, stats).has_value();
        by_rep.emplace(cls.representative, std::move(cls));
    }
    std::vector<InequalityClass> out;
    for (auto& [rep, cls] : by_rep) out.push_back(std::move(cls));
    std::stable_sort(out.begin(), out.end(), [](const InequalityClass& a, const InequalityClass& b) {
        if (a.trivial != b.trivial) return a.trivial;
        return a.representative < b.representative;
    });
    return out;
}

// --- projection pipeline -----------------------------------------------------------

namespace {

// Scenario context masks translated into the constraint cone's ground.
std::vector<Mask> translate_contexts(const MarginalScenario& s, const Ground& target) {
    std::vector<int> var_map(s.ground->size());
    for (int i = 0; i < s.ground->size(); ++i) var_map[i] = target.index(s.ground->name(i));
    std::vector<Mask> out;
    for (Mask m : s.contexts) {
        Mask t = 0;
        for (int i = 0; i < s.ground->size(); ++i)
            if (m & (Mask(1) << i)) t |= Mask(1) << var_map[i];
        out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Rename a projected cone onto the scenario's observable ground.
ConeH re_ground(const ConeH& cone, const GroundPtr& target) {
    std::vector<int> var_map(cone.ground->size(), -1);
    for (int i = 0; i < cone.ground->size(); ++i)
        if (target->contains(cone.ground->name(i))) var_map[i] = target->index(cone.ground->name(i));
    ConeH out;
    out.ground = target;
    std::vector<std::size_t> order(cone.coords.size());
    std::vector<Coord> mapped(cone.coords.size());
    for (std::size_t k = 0; k < cone.coords.size(); ++k) {
        Coord c = cone.coords[k];
        if (c == kBudgetCoord) {
            mapped[k] = kBudgetCoord;
            continue;
        }
        Mask t = 0;
        for (int i = 0; i < cone.ground->size(); ++i) {
            if (!(c & (Mask(1) << i))) continue;
            if (var_map[i] < 0)
                throw std::logic_error("re_ground: projected coordinate mentions a hidden variable");
            t |= Mask(1) << var_map[i];
        }
        mapped[k] = t;
    }
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return mapped[a] < mapped[b]; });
    for (auto k : order) out.coords.push_back(mapped[k]);
    for (const auto& r : cone.ineqs) {
        RatVec row(order.size());
        for (std::size_t k = 0; k < order.size(); ++k) row[k] = r[order[k]];
        out.ineqs.push_back(std::move(row));
    }
    for (const auto& r : cone.eqs) {
        RatVec row(order.size());
        for (std::size_t k = 0; k < order.size(); ++k) row[k] = r[order[k]];
        out.eqs.push_back(std::move(row));
    }
    return cone_canonical(out);
}

std::string serialize_cone_for_cache(const ConeH& cone, const std::vector<Coord>& keep) {
    std::ostringstream os;
    os << "ground:";
    for (const auto& n : cone.ground->names()) os << ' ' << n;
    os << "\ncoords:";
    for (Coord c : cone.coords) os << ' ' << c;
    os << "\nkeep:";
    for (Coord c : keep) os << ' ' << c;
    os << "\nineqs:\n";
    for (const auto& r : cone.ineqs) {
        for (const auto& x : r) os << x << ' ';
        os << '\n';
    }
    os << "eqs:\n";
    for (const auto& r : cone.eqs) {
        for (const auto& x : r) os << x << ' ';
        os << '\n';
    }
    return os.str();
}

std::string serialize_rows(const ConeH& cone) {
    std::ostringstream os;
    os << cone.coords.size() << '\n';
    for (Coord c : cone.coords) os << c << ' ';
    os << '\n' << cone.ineqs.size() << '\n';
    for (const auto& r : cone.ineqs) {
        for (const auto& x : r) os << x << ' ';
        os << '\n';
    }
    os << cone.eqs.size() << '\n';
    for (const auto& r : cone.eqs) {
        for (const auto& x : r) os << x << ' ';
        os << '\n';
    }
    return os.str();
}

bool deserialize_rows(const std::string& text, const GroundPtr& ground, ConeH& out) {
    std::istringstream is(text);
    std::size_t ncoords = 0;
    if (!(is >> ncoords)) return false;
    out.ground = ground;
    out.coords.resize(ncoords);
    for (auto& c : out.coords)
        if (!(is >> c)) return false;
    std::size_t nineq = 0;
    if (!(is >> nineq)) return false;
    out.ineqs.assign(nineq, RatVec(ncoords));
    std::string tok;
    for (auto& r : out.ineqs)
        for (auto& x : r) {
            if (!(is >> tok)) return false;
            x = rat_parse(tok);
        }
    std::size_t neq = 0;
    if (!(is >> neq)) return false;
    out.eqs.assign(neq, RatVec(ncoords));
    for (auto& r : out.eqs)
        for (auto& x : r) {
            if (!(is >> tok)) return false;
            x = rat_parse(tok);
        }
    return true;
}

// Project a subsystem cone to the kept coordinates, memoized on disk when a
// cache directory is configured.
ConeH project_subsystem(const ConeH& cone, const std::vector<Coord>& keep,
                        const ProjectOptions& opts) {
    std::string key;
    if (!opts.cache_dir.empty()) {
        key = sha256_hex(serialize_cone_for_cache(cone, keep));
        auto path = std::filesystem::path(opts.cache_dir) / ("entrocone-" + key + ".cone");
        std::ifstream in(path);
        if (in) {
            std::stringstream buf;
            buf << in.rdbuf();
            ConeH cached;
            if (deserialize_rows(buf.str(), cone.ground, cached)) return cached;
        }
    }
    std::set<Coord> keepset(keep.begin(), keep.end());
    std::vector<Coord> drop;
    for (Coord c : cone.coords)
        if (!keepset.count(c)) drop.push_back(c);
    auto sub = substitute_equalities(cone, std::set<Coord>(drop.begin(), drop.end()));
    std::vector<Coord> drop2;
    for (Coord c : sub.cone.coords)
        if (!keepset.count(c)) drop2.push_back(c);
    auto proj = remove_redundant(fm_eliminate(sub.cone, drop2, opts.fm), opts.fm.stats);
    if (!opts.cache_dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(opts.cache_dir, ec);
        auto path = std::filesystem::path(opts.cache_dir) / ("entrocone-" + key + ".cone");
        std::ofstream outf(path);
        outf << serialize_rows(proj);
    }
    return proj;
}

ConeH union_cones(const GroundPtr& ground, const std::vector<ConeH>& parts) {
    std::set<Coord> coordset;
    for (const auto& p : parts)
        for (Coord c : p.coords) coordset.insert(c);
    ConeH out;
    out.ground = ground;
    out.coords.assign(coordset.begin(), coordset.end());
    for (const auto& p : parts) {
        std::vector<int> where(p.coords.size());
        for (std::size_t k = 0; k < p.coords.size(); ++k) where[k] = out.coord_index(p.coords[k]);
        for (const auto& r : p.ineqs) {
            RatVec row(out.coords.size(), Rat(0));
            for (std::size_t k = 0; k < r.size(); ++k) row[where[k]] = r[k];
            out.ineqs.push_back(std::move(row));
        }
        for (const auto& r : p.eqs) {
            RatVec row(out.coords.size(), Rat(0));
            for (std::size_t k = 0; k < r.size(); ++k) row[where[k]] = r[k];
            out.eqs.push_back(std::move(row));
        }
    }
    return cone_canonical(out);
}

ProjectResult finish_projection(const ConeH& constraints, const MarginalScenario& scenario,
                                const ProjectOptions& opts, const std::vector<Mask>& keep_masks) {
    std::vector<Coord> keep(keep_masks.begin(), keep_masks.end());
    if (constraints.has_budget()) keep.push_back(kBudgetCoord);
    std::set<Coord> keepset(keep.begin(), keep.end());

    std::vector<Coord> eliminable;
    for (Coord c : constraints.coords)
        if (!keepset.count(c)) eliminable.push_back(c);
    auto sub = substitute_equalities(constraints, std::set<Coord>(eliminable.begin(), eliminable.end()));
    std::vector<Coord> drop;
    for (Coord c : sub.cone.coords)
        if (!keepset.count(c)) drop.push_back(c);
    auto proj = fm_eliminate(sub.cone, drop, opts.fm);
    auto irr = remove_redundant(proj, opts.fm.stats);

    ProjectResult out;
    out.cone = re_ground(irr, scenario.ground);
    std::vector<LinearInequality> ineqs;
    for (const auto& r : out.cone.ineqs) ineqs.push_back(row_to_inequality(out.cone, r, false));
    out.classes = classify(ineqs, scenario, opts.fm.stats);
    return out;
}

}  // namespace

ProjectResult project_scenario(const ConeH& constraints, const MarginalScenario& scenario,
                               const ProjectOptions& opts) {
    // scenario coordinates in the constraint ground
    auto contexts = translate_contexts(scenario, *constraints.ground);
    for (Mask m : contexts)
        if (constraints.coord_index(m) < 0)
            throw std::invalid_argument("project_scenario: scenario coordinate missing from cone");

    if (opts.strategy == Strategy::Direct)
        return finish_projection(constraints, scenario, opts, contexts);

    // pieces: bipartite decomposition into per-setting subsystems
    if (scenario.parties.size() != 2)
        throw std::invalid_argument("project_scenario: pieces strategy needs a bipartite scenario");
    const Ground& full = *constraints.ground;
    // hidden variables = ground names beyond the observables
    Mask hidden = 0;
    for (int i = 0; i < full.size(); ++i)
        if (!scenario.ground->contains(full.name(i))) hidden |= Mask(1) << i;

    auto obs_mask = [&](int scenario_var) {
        return Mask(1) << full.index(scenario.ground->name(scenario_var));
    };
    Mask ablock = 0, bblock = 0;
    for (int v : scenario.parties[0]) ablock |= obs_mask(v);
    for (int v : scenario.parties[1]) bblock |= obs_mask(v);

    auto subsets_of = [](Mask m, std::set<Coord>& into) {
        for (Mask sub = m; sub != 0; sub = (sub - 1) & m) into.insert(sub);
    };

    std::vector<ConeH> parts;
    if (hidden == 0) {
        // plain marginal scenario: per-setting subsystems coinciding on the
        // other party's block, taken on both sides so the union keeps the
        // scenario's party symmetry
        auto plain_part = [&](Mask blockvars, Mask single) {
            Mask vars = blockvars | single;
            auto cons = elemental_inequalities_subset(constraints.ground, vars);
            std::set<Coord> keep;
            for (int ai : scenario.parties[0])
                for (int bj : scenario.parties[1]) {
                    Mask pair_mask = obs_mask(ai) | obs_mask(bj);
                    if (subset_of(pair_mask, vars)) subsets_of(pair_mask, keep);
                }
            subsets_of(blockvars, keep);
            std::vector<Coord> coords;
            for (Mask s = vars; s != 0; s = (s - 1) & vars) coords.push_back(s);
            auto cone = cone_from_inequalities(constraints.ground, cons, coords);
            return project_subsystem(cone, {keep.begin(), keep.end()}, opts);
        };
        for (int bj : scenario.parties[1]) parts.push_back(plain_part(ablock, obs_mask(bj)));
        for (int ai : scenario.parties[0]) parts.push_back(plain_part(bblock, obs_mask(ai)));
    } else {
        if (popcount(static_cast<Mask>(hidden)) != 1)
            throw std::invalid_argument("project_scenario: pieces with more than one hidden source");
        if (!constraints.has_budget())
            throw std::invalid_argument("project_scenario: pieces with a source expects a budget");
        // A-side subsystems {A-block, B_j, L} and B-side subsystems
        // {A_i, B-block, L}, all carrying their screening CI and the budget
        auto make_part = [&](Mask blockvars, Mask single, Mask keep_block) {
            Mask vars = blockvars | single | hidden;
            auto cons = elemental_inequalities_subset(constraints.ground, vars);
            cons.push_back(ci_equality(constraints.ground, blockvars, single, hidden));
            LinearInequality bound(constraints.ground);
            bound.set_coeff(hidden, 1);
            bound.set_relation(Relation::LE);
            bound.set_budget(1);
            cons.push_back(normalize(bound));
            std::set<Coord> keep;
            // pair contexts between the block and the single party
            for (int ai : scenario.parties[0])
                for (int bj : scenario.parties[1]) {
                    Mask pair_mask = obs_mask(ai) | obs_mask(bj);
                    if (subset_of(pair_mask, vars)) subsets_of(pair_mask, keep);
                }
            subsets_of(keep_block | hidden, keep);
            keep.insert(kBudgetCoord);
            std::vector<Coord> coords;
            for (Mask s = vars; s != 0; s = (s - 1) & vars) coords.push_back(s);
            coords.push_back(kBudgetCoord);
            auto cone = cone_from_inequalities(constraints.ground, cons, coords);
            return project_subsystem(cone, {keep.begin(), keep.end()}, opts);
        };
        for (int bj : scenario.parties[1]) parts.push_back(make_part(ablock, obs_mask(bj), ablock));
        for (int ai : scenario.parties[0]) parts.push_back(make_part(bblock, obs_mask(ai), bblock));
    }

    auto unioned = union_cones(constraints.ground, parts);
    return finish_projection(unioned, scenario, opts, contexts);
}

}  // namespace entrocone
