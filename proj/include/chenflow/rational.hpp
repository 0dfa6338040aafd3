#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <sstream>
#include <string>

#include "chenflow/errors.hpp"

namespace chenflow {

// Exact scalar used by all identity tests.  cpp_rational keeps numerator and
// denominator in canonical form automatically.
using Rat = boost::multiprecision::cpp_rational;

template <typename S>
struct scalar_traits {
    static S from_ratio(long long num, long long den) { return S(num) / S(den); }
    static bool is_zero(const S& x) { return x == S(0); }
};

template <typename S>
S scalar_ratio(long long num, long long den) {
    return scalar_traits<S>::from_ratio(num, den);
}

template <typename S>
S scalar_pow(S base, unsigned exponent) {
    S out(1);
    while (exponent) {
        if (exponent & 1u) out *= base;
        base *= base;
        exponent >>= 1u;
    }
    return out;
}

template <typename S>
S scalar_factorial(unsigned n) {
    S out(1);
    for (unsigned k = 2; k <= n; ++k) out *= S(static_cast<long long>(k));
    return out;
}

inline double scalar_to_double(const Rat& x) { return x.convert_to<double>(); }
inline double scalar_to_double(double x) { return x; }

inline std::string scalar_to_string(const Rat& x) {
    std::ostringstream os;
    os << numerator(x);
    if (denominator(x) != 1) os << "/" << denominator(x);
    return os.str();
}

std::string scalar_to_string(double x);

// Parses "p/q", "p", or a decimal literal.
template <typename S>
S parse_scalar(const std::string& text);

template <>
Rat parse_scalar<Rat>(const std::string& text);
template <>
double parse_scalar<double>(const std::string& text);

}  // namespace chenflow
