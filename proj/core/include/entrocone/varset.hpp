#pragma once

#include <bit>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace entrocone {

// Named ground set of variables. Indices are stable; all subset masks refer
// to the position of a name in `names`.
class Ground {
public:
    Ground() = default;
    explicit Ground(std::vector<std::string> names);

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }

    // Index of a variable name; throws std::invalid_argument if unknown.
    int index(const std::string& name) const;
    bool contains(const std::string& name) const;

    bool operator==(const Ground& o) const { return names_ == o.names_; }

private:
    std::vector<std::string> names_;
};

using GroundPtr = std::shared_ptr<const Ground>;

GroundPtr make_ground(std::vector<std::string> names);

// Subset of a ground set, encoded as a bitmask. The empty set is mask 0.
// Canonical ordering of subsets is ascending mask value.
using Mask = std::uint32_t;

inline int popcount(Mask m) { return std::popcount(m); }
inline bool subset_of(Mask a, Mask b) { return (a & ~b) == 0; }
inline Mask full_mask(int n) { return n >= 32 ? ~Mask(0) : ((Mask(1) << n) - 1); }

struct VarSet {
    GroundPtr ground;
    Mask mask = 0;

    bool operator==(const VarSet& o) const { return mask == o.mask && *ground == *o.ground; }
};

VarSet make_varset(const GroundPtr& g, const std::vector<std::string>& names);

// Sorted-ascending member list, e.g. "A0,B1" (empty string for the empty set).
std::string mask_label(const Ground& g, Mask m);
std::vector<std::string> mask_names(const Ground& g, Mask m);
Mask mask_from_names(const Ground& g, const std::vector<std::string>& names);

}  // namespace entrocone
