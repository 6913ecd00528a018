#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "entrocone/rational.hpp"
#include "entrocone/set_function.hpp"
#include "entrocone/varset.hpp"

namespace entrocone {

enum class Relation { GE, LE, EQ };

std::string relation_token(Relation r);

// Rational linear inequality over the subsets of a ground set:
//
//   sum_S coeff_S * x_S   <rel>   bound + budget * C
//
// where C is the symbolic shared-randomness budget. Homogeneous facets have
// bound = budget = 0. This is the universal currency for Shannon-type,
// probabilistic and bounded-randomness inequalities.
class LinearInequality {
public:
    LinearInequality() = default;
    explicit LinearInequality(GroundPtr ground) : ground_(std::move(ground)) {}

    const GroundPtr& ground() const { return ground_; }
    int n() const { return ground_ ? ground_->size() : 0; }

    const std::map<Mask, Rat>& terms() const { return terms_; }
    Rat coeff(Mask m) const;
    void set_coeff(Mask m, const Rat& c);
    void add_coeff(Mask m, const Rat& c);

    Relation relation() const { return rel_; }
    void set_relation(Relation r) { rel_ = r; }

    const Rat& bound() const { return bound_; }
    void set_bound(const Rat& b) { bound_ = b; }

    // Coefficient on the symbolic budget C; 0 when the bound is plain.
    const Rat& budget() const { return budget_; }
    void set_budget(const Rat& b) { budget_ = b; }
    bool has_budget() const { return budget_ != 0; }

    bool is_zero() const { return terms_.empty() && bound_ == 0 && budget_ == 0; }

    // The same constraint with both sides negated (GE <-> LE).
    LinearInequality negated() const;

    LinearInequality scaled(const Rat& s) const;

    // Coefficient-wise sum; relations must be compatible (used by certificate
    // verification, which tracks relations itself).
    void add_scaled(const LinearInequality& other, const Rat& s);

    bool operator==(const LinearInequality& o) const;
    bool operator<(const LinearInequality& o) const;  // deterministic total order

    std::string to_text() const;

private:
    GroundPtr ground_;
    std::map<Mask, Rat> terms_;
    Relation rel_ = Relation::GE;
    Rat bound_ = 0;
    Rat budget_ = 0;
};

// Canonical form: primitive integer coefficients, GE orientation for
// inequalities (LE is flipped), leading coefficient positive for equalities.
// Idempotent; preserves the solution set. The all-zero input canonicalizes
// to the trivial 0 >= 0.
LinearInequality normalize(const LinearInequality& ineq);

struct Evaluation {
    bool exact = false;
    Rat value_exact = 0;     // valid when exact
    double value = 0.0;      // always valid
    bool satisfied = false;
};

// Evaluates sum coeff_S * v_S against the bound. `budget` must be supplied
// iff the inequality carries a symbolic C. Exact vectors compare exactly;
// float vectors with absolute tolerance 1e-9.
Evaluation evaluate(const LinearInequality& ineq, const SetFunctionVector& v,
                    const std::optional<Rat>& budget = std::nullopt);

// One term per subset: "{sign}{rational}*H(v1,v2,...)", relation ">="/"<="/
// "=", bound "0", a rational, "C" or "{rational}*C". Example:
//   +1*H(A0) +1*H(B0) -1*H(A0,B0) <= 0
std::string render_inequality(const LinearInequality& ineq);
LinearInequality parse_inequality(const std::string& line, const GroundPtr& ground);

// Convenience builder: terms given as (variable-name-list, coefficient).
LinearInequality make_inequality(
    const GroundPtr& g,
    const std::vector<std::pair<std::vector<std::string>, Rat>>& terms,
    Relation rel, const Rat& bound = 0, const Rat& budget = 0);

std::ostream& operator<<(std::ostream& os, const LinearInequality& ineq);

}  // namespace entrocone
