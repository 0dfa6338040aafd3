#include "chenflow/ode.hpp"

#include <algorithm>
#include <cmath>

#include "chenflow/errors.hpp"

namespace chenflow {

namespace {

constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// error weights: 5th-order minus embedded 4th-order solution
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

std::vector<double> dopri5(
    const std::function<void(const std::vector<double>&, std::vector<double>&)>& rhs,
    std::vector<double> y, double t_end, const OdeOptions& options) {
    const std::size_t n = y.size();
    if (t_end == 0.0) return y;
    double t = 0.0;
    const double direction = t_end > 0 ? 1.0 : -1.0;

    std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), work(n), y5(n);
    rhs(y, k1);

    double h = direction * std::min(std::abs(t_end), 1e-2);
    for (int step = 0; step < options.max_steps; ++step) {
        if ((t_end - t) * direction <= 0.0) return y;
        if (std::abs(h) > std::abs(t_end - t)) h = t_end - t;
        if (std::abs(h) < 1e-300) throw integration_error("dopri5 step size underflow");

        auto stage = [&](std::vector<double>& k, auto... weighted) {
            for (std::size_t i = 0; i < n; ++i) {
                double acc = y[i];
                ((acc += h * weighted.first * (*weighted.second)[i]), ...);
                work[i] = acc;
            }
            rhs(work, k);
        };
        stage(k2, std::pair{a21, &k1});
        stage(k3, std::pair{a31, &k1}, std::pair{a32, &k2});
        stage(k4, std::pair{a41, &k1}, std::pair{a42, &k2}, std::pair{a43, &k3});
        stage(k5, std::pair{a51, &k1}, std::pair{a52, &k2}, std::pair{a53, &k3},
              std::pair{a54, &k4});
        stage(k6, std::pair{a61, &k1}, std::pair{a62, &k2}, std::pair{a63, &k3},
              std::pair{a64, &k4}, std::pair{a65, &k5});

        double err_norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        }
        rhs(y5, k7);
        for (std::size_t i = 0; i < n; ++i) {
            const double err = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                    e6 * k6[i] + e7 * k7[i]);
            const double scale =
                options.abs_tol + options.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
            err_norm = std::max(err_norm, std::abs(err) / scale);
        }

        if (err_norm <= 1.0) {
            t += h;
            y.swap(y5);
            k1.swap(k7);  // FSAL
        }
        const double factor =
            err_norm == 0.0 ? 5.0
                            : std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 5.0);
        h *= factor;
    }
    throw integration_error("dopri5 exhausted its step budget (possible blow-up)");
}

}  // namespace chenflow
