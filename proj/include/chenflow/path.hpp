#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "chenflow/rational.hpp"

namespace chenflow {

// Piecewise-linear path in R^d.  Letter 0 is the implicit time coordinate
// x^0_t = t, so slopes carry only the d spatial components.
template <typename S>
struct PiecewiseLinearPath {
    std::vector<S> times;               // M+1 strictly increasing breakpoints, times[0] == 0
    std::vector<std::vector<S>> slopes; // M segment slope vectors in R^d

    int dimension() const { return slopes.empty() ? 0 : static_cast<int>(slopes[0].size()); }
    int segments() const { return static_cast<int>(slopes.size()); }
    S duration(int m) const { return times[m + 1] - times[m]; }
    S horizon() const { return times.back(); }

    void validate() const {
        if (times.size() != slopes.size() + 1 || slopes.empty())
            throw config_error("path needs M segments and M+1 breakpoints");
        if (!(times.front() == S(0))) throw config_error("path must start at time 0");
        for (std::size_t m = 0; m + 1 < times.size(); ++m)
            if (!(times[m] < times[m + 1]))
                throw config_error("path breakpoints must be strictly increasing");
        for (const auto& a : slopes)
            if (a.size() != slopes[0].size())
                throw config_error("path slope dimension must be constant");
    }

    // Endpoint displacement of coordinate i (1-based spatial index).
    S endpoint(int i) const {
        S out(0);
        for (int m = 0; m < segments(); ++m) out += slopes[m][i - 1] * duration(m);
        return out;
    }
};

template <typename S>
PiecewiseLinearPath<S> concatenate(const PiecewiseLinearPath<S>& a,
                                   const PiecewiseLinearPath<S>& b) {
    if (a.dimension() != b.dimension()) throw config_error("path dimensions differ");
    PiecewiseLinearPath<S> out = a;
    const S shift = a.horizon();
    for (std::size_t m = 1; m < b.times.size(); ++m) out.times.push_back(b.times[m] + shift);
    for (const auto& s : b.slopes) out.slopes.push_back(s);
    return out;
}

// Text format: one line per segment, "t_start t_end a_1 ... a_d".
template <typename S>
PiecewiseLinearPath<S> parse_path(std::istream& in) {
    PiecewiseLinearPath<S> path;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::vector<std::string> fields;
        std::string tok;
        while (ls >> tok) fields.push_back(tok);
        if (fields.size() < 3) throw config_error("path line needs t_start t_end and slopes");
        const S t0 = parse_scalar<S>(fields[0]);
        const S t1 = parse_scalar<S>(fields[1]);
        std::vector<S> slope;
        for (std::size_t i = 2; i < fields.size(); ++i) slope.push_back(parse_scalar<S>(fields[i]));
        if (path.times.empty()) {
            path.times.push_back(t0);
        } else if (!(path.times.back() == t0)) {
            throw config_error("path segments must be contiguous in time");
        }
        path.times.push_back(t1);
        path.slopes.push_back(std::move(slope));
    }
    path.validate();
    return path;
}

template <typename S>
void format_path(const PiecewiseLinearPath<S>& path, std::ostream& os) {
    for (int m = 0; m < path.segments(); ++m) {
        os << scalar_to_string(path.times[m]) << " " << scalar_to_string(path.times[m + 1]);
        for (const auto& a : path.slopes[m]) os << " " << scalar_to_string(a);
        os << "\n";
    }
}

}  // namespace chenflow
