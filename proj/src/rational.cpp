#include "chenflow/rational.hpp"

#include <cstdio>
#include <cstdlib>

namespace chenflow {

std::string scalar_to_string(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

template <>
Rat parse_scalar<Rat>(const std::string& text) {
    try {
        const auto slash = text.find('/');
        if (slash != std::string::npos) {
            boost::multiprecision::cpp_int num(text.substr(0, slash));
            boost::multiprecision::cpp_int den(text.substr(slash + 1));
            if (den == 0) throw config_error("zero denominator in '" + text + "'");
            return Rat(num, den);
        }
        const auto dot = text.find('.');
        if (dot == std::string::npos) return Rat(boost::multiprecision::cpp_int(text));
        // decimal literal -> exact rational
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        boost::multiprecision::cpp_int num(digits);
        boost::multiprecision::cpp_int den(1);
        for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw config_error("cannot parse rational '" + text + "'");
    }
}

template <>
double parse_scalar<double>(const std::string& text) {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const double num = parse_scalar<double>(text.substr(0, slash));
        const double den = parse_scalar<double>(text.substr(slash + 1));
        if (den == 0.0) throw config_error("zero denominator in '" + text + "'");
        return num / den;
    }
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0')
        throw config_error("cannot parse number '" + text + "'");
    return value;
}

}  // namespace chenflow
