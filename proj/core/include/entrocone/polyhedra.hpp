#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "entrocone/inequality.hpp"
#include "entrocone/simplex.hpp"
#include "entrocone/varset.hpp"

namespace entrocone {

// A cone coordinate: a subset of the ground set, or the symbolic budget
// column C homogenizing bounded-randomness constraints. The budget column
// sorts last and is never eliminated.
using Coord = std::uint64_t;
constexpr Coord kBudgetCoord = ~Coord(0);

std::string coord_label(const Ground& g, Coord c);

struct PolyStats {
    std::size_t max_intermediate_ineqs = 0;
    long lp_calls = 0;
    long fm_pairs = 0;

    void note_count(std::size_t n) {
        if (n > max_intermediate_ineqs) max_intermediate_ineqs = n;
    }
};

// Raised when an elimination exceeds the configured inequality cap.
class ResourceError : public std::runtime_error {
public:
    ResourceError(const std::string& what, std::size_t count)
        : std::runtime_error(what), count(count) {}
    std::size_t count;
};

// H-representation of a polyhedral cone: rows are homogeneous `row.x >= 0`
// inequalities and `row.x == 0` equalities over an explicit coordinate list.
struct ConeH {
    GroundPtr ground;
    std::vector<Coord> coords;  // ascending; kBudgetCoord last when present
    RatMat ineqs;
    RatMat eqs;

    int dim() const { return static_cast<int>(coords.size()); }
    int coord_index(Coord c) const;  // -1 if absent
    bool has_budget() const { return !coords.empty() && coords.back() == kBudgetCoord; }
};

// Builds a cone from inequalities over a declared coordinate list (defaults
// to every nonempty subset of the ground set, plus the budget column if any
// constraint mentions C). Terms outside the coordinate list are rejected.
ConeH cone_from_inequalities(const GroundPtr& ground,
                             const std::vector<LinearInequality>& constraints,
                             std::optional<std::vector<Coord>> coords = std::nullopt);

LinearInequality row_to_inequality(const ConeH& cone, const RatVec& row, bool equality = false);
RatVec inequality_to_row(const ConeH& cone, const LinearInequality& ineq);
std::vector<LinearInequality> cone_inequalities(const ConeH& cone);

// Canonical form: primitive rows, sorted, duplicates removed.
ConeH cone_canonical(const ConeH& cone);

// V-representation: extreme points and extreme directions with exact
// rational coordinates. Pointed homogeneous cones have no points.
struct VRep {
    GroundPtr ground;
    std::vector<Coord> coords;
    RatMat points;
    RatMat directions;
};

// Nonnegative combination of referenced constraints (equality references may
// carry signed multipliers) reproducing a target inequality coefficient-wise.
struct Certificate {
    struct Term {
        int index;  // into the constraint list the certificate is stated over
        Rat multiplier;
    };
    std::vector<Term> terms;
};

// Exact summation of certificate terms over a constraint list; every
// constraint is first normalized to its >= orientation.
LinearInequality certificate_sum(const std::vector<LinearInequality>& constraints,
                                 const Certificate& cert);
bool certificate_verifies(const std::vector<LinearInequality>& constraints,
                          const Certificate& cert, const LinearInequality& target);

struct Substitution {
    // Pivot coordinate replaced by a linear expression over kept coordinates,
    // in elimination order.
    std::vector<std::pair<Coord, std::map<Coord, Rat>>> pivots;
};

struct SubstituteResult {
    ConeH cone;
    Substitution subst;
};

// Gaussian elimination over the equalities. Pivots are restricted to
// `allowed` coordinates when given; equalities expressible over kept
// coordinates remain in the output.
SubstituteResult substitute_equalities(const ConeH& cone,
                                       const std::optional<std::set<Coord>>& allowed = std::nullopt);

struct FmOptions {
    int prune_every = 1;               // exact-LP prune after this many coordinates
    std::size_t max_ineqs = 2'000'000;  // intermediate-row cap
    int workers = 1;
    // When the live system reaches this dimension, the remaining coordinates
    // are projected through the V-representation (rays project by dropping
    // components; a dual double-description run recovers the facets). Falls
    // back to pairwise elimination if the intermediate cone is not pointed.
    // 0 disables the switch.
    int dd_switch_dim = 18;
    PolyStats* stats = nullptr;
};

// Fourier-Motzkin projection: eliminates the listed coordinates one at a
// time (greedy min positive*negative order), with Kohler/Chernikov ancestor
// pruning always on and exact-LP redundancy removal every `prune_every`
// steps. No equality may mention a dropped coordinate.
ConeH fm_eliminate(const ConeH& cone, const std::vector<Coord>& drop, const FmOptions& opts = {});

// Deletes every inequality LP-implied by the remaining ones plus the
// equalities. First-kept scan in canonical row order; exact LP.
ConeH remove_redundant(const ConeH& cone, PolyStats* stats = nullptr);

// Farkas implication: target is a consequence of the cone iff it is a
// nonnegative combination of its inequalities plus signed equality
// multiples. Certificates index [ineqs..., eqs...] in cone row order.
std::optional<Certificate> implies(const ConeH& cone, const LinearInequality& target,
                                   PolyStats* stats = nullptr);

// Double-description enumeration of the extreme rays of a pointed cone.
VRep extreme_rays(const ConeH& cone, int dim_cap = 24, PolyStats* stats = nullptr);

// Affine variant: rows mean a.x >= b; the result carries extreme points and
// extreme directions (Appendix-style polyhedra).
struct AffineSystem {
    RatMat rows;   // a-part
    RatVec rhs;    // b-part
};
struct RawVRep {
    RatMat points;
    RatMat directions;
};
RawVRep extreme_rays_affine(const AffineSystem& sys, int dim_cap = 24);

struct FacetDecision {
    bool facet = false;
    int face_dim = -1;  // -1 encodes the empty face
};

// Appendix-style facet test: collect saturating points/directions, rank the
// matrix of (p_i - p_1) columns and direction columns, compare with
// ambient_dim - 1. Every element of the V-representation must satisfy the
// inequality; a violation is reported as an error.
FacetDecision is_facet_raw(const RatMat& points, const RatMat& directions,
                           const RatVec& normal, const Rat& rhs, int ambient_dim);
FacetDecision is_facet(const VRep& v, const LinearInequality& ineq, int ambient_dim);

// Dimension of conv(points) + cone(directions).
int polyhedron_dim(const RatMat& points, const RatMat& directions);

// LP membership of target in the conic hull of the generators; coefficients
// reproduce the target exactly on success.
std::optional<RatVec> in_conic_hull(const RatMat& generators, const RatVec& target,
                                    PolyStats* stats = nullptr);

// Does some point of the cone take the given values at the listed
// coordinates? (Preimage test for projections.)
bool cone_section_feasible(const ConeH& cone, const std::vector<Coord>& at, const RatVec& values,
                           PolyStats* stats = nullptr);

}  // namespace entrocone
