#include "entrocone/varset.hpp"

#include <stdexcept>

namespace entrocone {

Ground::Ground(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.size() > 31) throw std::invalid_argument("ground set too large (max 31 variables)");
    for (size_t i = 0; i < names_.size(); ++i)
        for (size_t j = i + 1; j < names_.size(); ++j)
            if (names_[i] == names_[j])
                throw std::invalid_argument("duplicate variable name: " + names_[i]);
}

int Ground::index(const std::string& name) const {
    for (size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<int>(i);
    throw std::invalid_argument("unknown variable: " + name);
}

bool Ground::contains(const std::string& name) const {
    for (const auto& n : names_)
        if (n == name) return true;
    return false;
}

GroundPtr make_ground(std::vector<std::string> names) {
    return std::make_shared<const Ground>(std::move(names));
}

VarSet make_varset(const GroundPtr& g, const std::vector<std::string>& names) {
    return VarSet{g, mask_from_names(*g, names)};
}

std::string mask_label(const Ground& g, Mask m) {
    std::string out;
    for (int i = 0; i < g.size(); ++i) {
        if (m & (Mask(1) << i)) {
            if (!out.empty()) out += ',';
            out += g.name(i);
        }
    }
    return out;
}

std::vector<std::string> mask_names(const Ground& g, Mask m) {
    std::vector<std::string> out;
    for (int i = 0; i < g.size(); ++i)
        if (m & (Mask(1) << i)) out.push_back(g.name(i));
    return out;
}

Mask mask_from_names(const Ground& g, const std::vector<std::string>& names) {
    Mask m = 0;
    for (const auto& n : names) m |= Mask(1) << g.index(n);
    return m;
}

}  // namespace entrocone
