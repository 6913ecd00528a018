#include "entrocone/inequality.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace entrocone {

std::string relation_token(Relation r) {
    switch (r) {
        case Relation::GE: return ">=";
        case Relation::LE: return "<=";
        case Relation::EQ: return "=";
    }
    return "?";
}

Rat LinearInequality::coeff(Mask m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
}

void LinearInequality::set_coeff(Mask m, const Rat& c) {
    if (c == 0)
        terms_.erase(m);
    else
        terms_[m] = c;
}

void LinearInequality::add_coeff(Mask m, const Rat& c) { set_coeff(m, coeff(m) + c); }

LinearInequality LinearInequality::negated() const {
    LinearInequality out(ground_);
    for (const auto& [m, c] : terms_) out.terms_[m] = -c;
    out.bound_ = -bound_;
    out.budget_ = -budget_;
    out.rel_ = rel_ == Relation::GE ? Relation::LE : rel_ == Relation::LE ? Relation::GE : Relation::EQ;
    return out;
}

LinearInequality LinearInequality::scaled(const Rat& s) const {
    if (s == 0) return LinearInequality(ground_);
    LinearInequality out = s > 0 ? *this : negated();
    Rat a = abs(s);
    for (auto& [m, c] : out.terms_) c *= a;
    out.bound_ *= a;
    out.budget_ *= a;
    return out;
}

void LinearInequality::add_scaled(const LinearInequality& other, const Rat& s) {
    if (ground_ && other.ground_ && !(*ground_ == *other.ground_))
        throw std::invalid_argument("add_scaled: ground mismatch");
    for (const auto& [m, c] : other.terms_) add_coeff(m, c * s);
    bound_ += other.bound_ * s;
    budget_ += other.budget_ * s;
}

bool LinearInequality::operator==(const LinearInequality& o) const {
    return rel_ == o.rel_ && bound_ == o.bound_ && budget_ == o.budget_ && terms_ == o.terms_;
}

bool LinearInequality::operator<(const LinearInequality& o) const {
    // Ascending-mask lexicographic order over (terms, relation, bound, budget).
    auto it = terms_.begin();
    auto jt = o.terms_.begin();
    while (it != terms_.end() && jt != o.terms_.end()) {
        if (it->first != jt->first) return it->first < jt->first;
        if (it->second != jt->second) return it->second < jt->second;
        ++it, ++jt;
    }
    if ((it != terms_.end()) != (jt != o.terms_.end())) return jt != o.terms_.end();
    if (rel_ != o.rel_) return static_cast<int>(rel_) < static_cast<int>(o.rel_);
    if (bound_ != o.bound_) return bound_ < o.bound_;
    return budget_ < o.budget_;
}

std::string LinearInequality::to_text() const { return render_inequality(*this); }

LinearInequality normalize(const LinearInequality& ineq) {
    LinearInequality out = ineq;
    // Strip explicit zeros.
    for (auto it = out.terms().begin(); it != out.terms().end();) {
        Mask m = it->first;
        ++it;
        if (out.coeff(m) == 0) out.set_coeff(m, 0);
    }
    if (out.terms().empty() && out.bound() == 0 && out.budget() == 0) {
        LinearInequality trivial(ineq.ground());
        trivial.set_relation(Relation::GE);
        return trivial;
    }
    if (out.relation() == Relation::LE) out = out.negated();
    if (out.relation() == Relation::EQ) {
        // Leading (smallest-mask) coefficient positive; bound/budget break ties
        // for term-free equalities.
        Rat lead = 0;
        if (!out.terms().empty())
            lead = out.terms().begin()->second;
        else if (out.bound() != 0)
            lead = out.bound();
        else
            lead = out.budget();
        if (lead < 0) out = out.negated();
        if (out.relation() == Relation::LE) out.set_relation(Relation::EQ);
    }

    std::vector<Rat> all;
    all.reserve(out.terms().size() + 2);
    for (const auto& [m, c] : out.terms()) all.push_back(c);
    all.push_back(out.bound());
    all.push_back(out.budget());
    std::vector<Rat> scaled = all;
    make_primitive(scaled);
    // make_primitive preserves signs; find the common positive scale factor.
    Rat factor = 0;
    for (size_t i = 0; i < all.size(); ++i) {
        if (all[i] != 0) {
            factor = scaled[i] / all[i];
            break;
        }
    }
    if (factor != 0 && factor != 1) {
        LinearInequality r(out.ground());
        r.set_relation(out.relation());
        for (const auto& [m, c] : out.terms()) r.set_coeff(m, c * factor);
        r.set_bound(out.bound() * factor);
        r.set_budget(out.budget() * factor);
        return r;
    }
    return out;
}

Evaluation evaluate(const LinearInequality& ineq, const SetFunctionVector& v,
                    const std::optional<Rat>& budget) {
    if (!ineq.ground() || !v.ground() || !(*ineq.ground() == *v.ground()))
        throw std::invalid_argument("evaluate: dimension mismatch");
    if (ineq.has_budget() && !budget)
        throw std::invalid_argument("evaluate: inequality is C-bounded but no budget was supplied");

    Evaluation ev;
    Rat rhs_exact = ineq.bound();
    if (ineq.has_budget()) rhs_exact += ineq.budget() * *budget;

    if (v.exact()) {
        Rat val = 0;
        for (const auto& [m, c] : ineq.terms()) val += c * v.rat(m);
        ev.exact = true;
        ev.value_exact = val;
        ev.value = rat_double(val);
        switch (ineq.relation()) {
            case Relation::GE: ev.satisfied = val >= rhs_exact; break;
            case Relation::LE: ev.satisfied = val <= rhs_exact; break;
            case Relation::EQ: ev.satisfied = val == rhs_exact; break;
        }
        return ev;
    }

    static constexpr double kTol = 1e-9;
    double val = 0;
    for (const auto& [m, c] : ineq.terms()) val += rat_double(c) * v.num(m);
    double rhs = rat_double(rhs_exact);
    ev.exact = false;
    ev.value = val;
    switch (ineq.relation()) {
        case Relation::GE: ev.satisfied = val >= rhs - kTol; break;
        case Relation::LE: ev.satisfied = val <= rhs + kTol; break;
        case Relation::EQ: ev.satisfied = std::abs(val - rhs) <= kTol; break;
    }
    return ev;
}

namespace {

std::string coeff_term(const Rat& c, const std::string& label) {
    std::string s = c >= 0 ? "+" : "-";
    s += rat_str(abs(c));
    s += "*";
    s += label;
    return s;
}

}  // namespace

std::string render_inequality(const LinearInequality& ineq) {
    const Ground& g = *ineq.ground();
    std::string s;
    if (ineq.terms().empty()) s = "+0*H()";
    for (const auto& [m, c] : ineq.terms()) {
        if (!s.empty()) s += ' ';
        s += coeff_term(c, "H(" + mask_label(g, m) + ")");
    }
    s += ' ';
    s += relation_token(ineq.relation());
    s += ' ';
    if (ineq.budget() == 0) {
        s += rat_str(ineq.bound());
    } else {
        if (ineq.bound() != 0) {
            s += rat_str(ineq.bound());
            s += '+';
        }
        if (ineq.budget() == 1)
            s += "C";
        else
            s += rat_str(ineq.budget()) + "*C";
    }
    return s;
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

void parse_bound(const std::string& tok, LinearInequality& out) {
    // const | C | k*C | const+k*C
    std::string t = tok;
    auto plus = t.find('+', 1);
    std::string cpart;
    if (plus != std::string::npos && t.find('C') != std::string::npos) {
        cpart = t.substr(plus + 1);
        t = t.substr(0, plus);
    } else if (t.find('C') != std::string::npos) {
        cpart = t;
        t.clear();
    }
    if (!t.empty()) out.set_bound(rat_parse(t));
    if (!cpart.empty()) {
        if (cpart == "C") {
            out.set_budget(1);
        } else {
            auto star = cpart.find("*C");
            if (star == std::string::npos || star + 2 != cpart.size())
                throw std::invalid_argument("malformed bound: " + tok);
            out.set_budget(rat_parse(cpart.substr(0, star)));
        }
    }
}

}  // namespace

LinearInequality parse_inequality(const std::string& line, const GroundPtr& ground) {
    auto toks = split_ws(line);
    if (toks.size() < 2) throw std::invalid_argument("malformed inequality line: " + line);
    LinearInequality out(ground);

    size_t rel_pos = toks.size();
    for (size_t i = 0; i < toks.size(); ++i) {
        if (toks[i] == ">=" || toks[i] == "<=" || toks[i] == "=") {
            rel_pos = i;
            break;
        }
    }
    if (rel_pos + 1 != toks.size() - 1 || rel_pos == toks.size())
        throw std::invalid_argument("inequality needs '<rel> <bound>' tail: " + line);
    out.set_relation(toks[rel_pos] == ">=" ? Relation::GE
                                           : toks[rel_pos] == "<=" ? Relation::LE : Relation::EQ);

    for (size_t i = 0; i < rel_pos; ++i) {
        const std::string& t = toks[i];
        auto star = t.find("*H(");
        if (star == std::string::npos || t.back() != ')')
            throw std::invalid_argument("malformed term '" + t + "' in: " + line);
        Rat c = rat_parse(t.substr(0, star));
        std::string inner = t.substr(star + 3, t.size() - star - 4);
        std::vector<std::string> names;
        std::string cur;
        for (char ch : inner) {
            if (ch == ',') {
                names.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        if (!cur.empty()) names.push_back(cur);
        out.add_coeff(mask_from_names(*ground, names), c);
    }
    parse_bound(toks[rel_pos + 1], out);
    return out;
}

LinearInequality make_inequality(
    const GroundPtr& g,
    const std::vector<std::pair<std::vector<std::string>, Rat>>& terms,
    Relation rel, const Rat& bound, const Rat& budget) {
    LinearInequality out(g);
    for (const auto& [names, c] : terms) out.add_coeff(mask_from_names(*g, names), c);
    out.set_relation(rel);
    out.set_bound(bound);
    out.set_budget(budget);
    return out;
}

std::ostream& operator<<(std::ostream& os, const LinearInequality& ineq) {
    return os << render_inequality(ineq);
}

}  // namespace entrocone
