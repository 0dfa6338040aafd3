#include "chenflow/stats.hpp"

#include <algorithm>

#include "chenflow/errors.hpp"

namespace chenflow {

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw config_error("linear_fit needs >= 2 points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw numeric_error("degenerate abscissae in linear_fit");
    LinearFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    if (x.size() > 2) {
        double ss = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double r = y[i] - fit.intercept - fit.slope * x[i];
            ss += r * r;
        }
        fit.slope_std_error = std::sqrt(ss / (n - 2) * n / denom);
    }
    return fit;
}

LinearFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > 0 && y[i] > 0) {
            lx.push_back(std::log(x[i]));
            ly.push_back(std::log(y[i]));
        }
    }
    return linear_fit(lx, ly);
}

MeanStdErr mean_std_error(const std::vector<double>& values) {
    MeanStdErr out;
    out.count = values.size();
    if (values.empty()) return out;
    double sum = 0;
    for (double v : values) sum += v;
    out.mean = sum / values.size();
    if (values.size() > 1) {
        double ss = 0;
        for (double v : values) ss += (v - out.mean) * (v - out.mean);
        out.std_error = std::sqrt(ss / (values.size() - 1) / values.size());
    }
    return out;
}

std::vector<double> silverman_bandwidths(const std::vector<std::vector<double>>& samples,
                                         double factor) {
    if (samples.empty()) throw config_error("silverman_bandwidths needs samples");
    const std::size_t d = samples[0].size();
    const double n = static_cast<double>(samples.size());
    std::vector<double> out(d);
    const double scale =
        factor * std::pow(4.0 / (static_cast<double>(d) + 2.0), 1.0 / (d + 4.0)) *
        std::pow(n, -1.0 / (d + 4.0));
    for (std::size_t j = 0; j < d; ++j) {
        double mean = 0;
        for (const auto& s : samples) mean += s[j];
        mean /= n;
        double var = 0;
        for (const auto& s : samples) var += (s[j] - mean) * (s[j] - mean);
        var = samples.size() > 1 ? var / (n - 1) : 0.0;
        out[j] = scale * std::sqrt(std::max(var, 1e-300));
    }
    return out;
}

}  // namespace chenflow
