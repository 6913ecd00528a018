#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace entrocone {

// Exact arithmetic scalar used by all cone geometry. Floating point appears
// only in entropy evaluation of non-dyadic distributions.
using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

std::string rat_str(const Rat& r);

// Parses "p", "-p/q" or a plain decimal integer. Throws std::invalid_argument
// on malformed input or zero denominator.
Rat rat_parse(const std::string& s);

inline int rat_sign(const Rat& r) { return r.sign(); }

double rat_double(const Rat& r);

// Scales a vector by the unique positive rational making it an integer vector
// with content (gcd of entries) one. The zero vector is left unchanged.
void make_primitive(std::vector<Rat>& v);

// log2 of a rational that is an exact power of two, if it is one.
std::optional<long> dyadic_log2(const Rat& p);

}  // namespace entrocone
