#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace chenflow {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_std_error = 0.0;
};

// Ordinary least squares y = a + b x.
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

// Fit of log|y| against log x, skipping non-positive y.
LinearFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y);

struct MeanStdErr {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t count = 0;
};

MeanStdErr mean_std_error(const std::vector<double>& values);

// Per-coordinate Silverman bandwidths scaled by `factor`.
std::vector<double> silverman_bandwidths(const std::vector<std::vector<double>>& samples,
                                         double factor);

}  // namespace chenflow
