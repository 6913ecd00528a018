#include "entrocone/set_function.hpp"

#include <stdexcept>

namespace entrocone {

SetFunctionVector::SetFunctionVector(GroundPtr ground, std::vector<Rat> values)
    : ground_(std::move(ground)), kind_(Kind::Exact), rvals_(std::move(values)) {
    if (rvals_.size() != size()) throw std::invalid_argument("SetFunctionVector: need 2^n entries");
}

SetFunctionVector::SetFunctionVector(GroundPtr ground, std::vector<double> values)
    : ground_(std::move(ground)), kind_(Kind::Float), fvals_(std::move(values)) {
    if (fvals_.size() != size()) throw std::invalid_argument("SetFunctionVector: need 2^n entries");
}

SetFunctionVector SetFunctionVector::zeros(GroundPtr ground, Kind kind) {
    std::size_t sz = std::size_t(1) << ground->size();
    if (kind == Kind::Exact) return SetFunctionVector(std::move(ground), std::vector<Rat>(sz, Rat(0)));
    return SetFunctionVector(std::move(ground), std::vector<double>(sz, 0.0));
}

double SetFunctionVector::num(Mask m) const {
    if (kind_ == Kind::Exact) return rat_double(rvals_.at(m));
    return fvals_.at(m);
}

SetFunctionVector SetFunctionVector::to_float() const {
    if (kind_ == Kind::Float) return *this;
    std::vector<double> f(rvals_.size());
    for (std::size_t i = 0; i < rvals_.size(); ++i) f[i] = rat_double(rvals_[i]);
    return SetFunctionVector(ground_, std::move(f));
}

bool SetFunctionVector::operator==(const SetFunctionVector& o) const {
    if (!(ground_ && o.ground_ && *ground_ == *o.ground_) || kind_ != o.kind_) return false;
    return kind_ == Kind::Exact ? rvals_ == o.rvals_ : fvals_ == o.fvals_;
}

}  // namespace entrocone
