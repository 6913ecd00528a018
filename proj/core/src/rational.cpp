#include "entrocone/rational.hpp"

#include <sstream>
#include <stdexcept>

namespace entrocone {

std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

Rat rat_parse(const std::string& s) {
    std::string t = s;
    if (!t.empty() && t[0] == '+') t = t.substr(1);
    if (t.empty()) throw std::invalid_argument("empty rational");
    for (char c : t) {
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '/'))
            throw std::invalid_argument("malformed rational: " + s);
    }
    auto slash = t.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(t));
        Int num(t.substr(0, slash));
        Int den(t.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rat(num, den);
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational: " + s);
    }
}

double rat_double(const Rat& r) { return r.convert_to<double>(); }

void make_primitive(std::vector<Rat>& v) {
    Int den_lcm = 1;
    for (const Rat& x : v)
        if (x != 0) den_lcm = lcm(den_lcm, denominator(x));
    Int num_gcd = 0;
    for (const Rat& x : v)
        if (x != 0) num_gcd = gcd(num_gcd, numerator(x) * (den_lcm / denominator(x)));
    if (num_gcd == 0) return;
    Rat scale(den_lcm, num_gcd);
    for (Rat& x : v) x *= scale;
}

std::optional<long> dyadic_log2(const Rat& p) {
    if (p <= 0) return std::nullopt;
    const Int num = numerator(p);
    const Int den = denominator(p);
    if (num == 1) {
        // p = 1/2^k ?
        Int d = den;
        long k = 0;
        while (d > 1) {
            if (d % 2 != 0) return std::nullopt;
            d /= 2;
            ++k;
        }
        return -k;
    }
    if (den == 1) {
        Int n = num;
        long k = 0;
        while (n > 1) {
            if (n % 2 != 0) return std::nullopt;
            n /= 2;
            ++k;
        }
        return k;
    }
    return std::nullopt;
}

}  // namespace entrocone
