#pragma once

// Exact rational scalar type used by every coefficient-bearing structure.

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <stdexcept>
#include <string>

namespace l2alex {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& m) : std::runtime_error(m) {}
};

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

inline double rat_to_double(const Rat& x) { return x.convert_to<double>(); }

inline double rat_log(const Rat& x) {
    // log of a positive rational, safe for values far outside double range
    if (x <= 0) throw std::domain_error("rat_log: nonpositive argument");
    const Int& n = boost::multiprecision::numerator(x);
    const Int& d = boost::multiprecision::denominator(x);
    auto log_int = [](const Int& v) {
        // v > 0; split off high bits so the conversion cannot overflow
        std::size_t bits = boost::multiprecision::msb(v);
        if (bits <= 900) return std::log(v.convert_to<double>());
        Int hi = v >> (bits - 64);
        return std::log(hi.convert_to<double>()) + (double)(bits - 64) * std::log(2.0);
    };
    return log_int(n) - log_int(d);
}

inline Rat rat_pow(const Rat& x, long long e) {
    if (e == 0) return Rat(1);
    Rat base = e > 0 ? x : Rat(1) / x;
    long long n = e > 0 ? e : -e;
    Rat acc(1);
    while (n) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

// "p", "-p", "p/q"
inline Rat parse_rat(const std::string& s) {
    try {
        return Rat(s);
    } catch (const std::exception&) {
        throw ParseError("bad rational literal: '" + s + "'");
    }
}

inline std::string format_rat(const Rat& x) { return x.str(); }

} // namespace l2alex
