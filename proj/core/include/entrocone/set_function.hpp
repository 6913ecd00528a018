#pragma once

#include <cstddef>
#include <vector>

#include "entrocone/rational.hpp"
#include "entrocone/varset.hpp"

namespace entrocone {

// A point of R_n: one scalar per subset of the ground set, indexed by mask in
// ascending order (the empty set first). Entries are either all exact
// rationals or all doubles, tagged by `kind`.
class SetFunctionVector {
public:
    enum class Kind { Exact, Float };

    SetFunctionVector() = default;
    SetFunctionVector(GroundPtr ground, std::vector<Rat> values);
    SetFunctionVector(GroundPtr ground, std::vector<double> values);

    static SetFunctionVector zeros(GroundPtr ground, Kind kind);

    const GroundPtr& ground() const { return ground_; }
    int n() const { return ground_ ? ground_->size() : 0; }
    std::size_t size() const { return std::size_t(1) << n(); }
    Kind kind() const { return kind_; }
    bool exact() const { return kind_ == Kind::Exact; }

    const Rat& rat(Mask m) const { return rvals_.at(m); }
    Rat& rat(Mask m) { return rvals_.at(m); }
    double num(Mask m) const;  // value as double, either kind

    const std::vector<Rat>& rats() const { return rvals_; }
    const std::vector<double>& floats() const { return fvals_; }

    SetFunctionVector to_float() const;

    bool operator==(const SetFunctionVector& o) const;

private:
    GroundPtr ground_;
    Kind kind_ = Kind::Exact;
    std::vector<Rat> rvals_;
    std::vector<double> fvals_;
};

}  // namespace entrocone
