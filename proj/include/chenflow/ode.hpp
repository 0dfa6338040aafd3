#pragma once

#include <functional>
#include <vector>

namespace chenflow {

struct OdeOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_steps = 200000;
};

// Dormand-Prince 5(4) with embedded error control.  Throws integration_error
// when the step budget is exhausted (possible blow-up) or the step underflows.
std::vector<double> dopri5(
    const std::function<void(const std::vector<double>&, std::vector<double>&)>& rhs,
    std::vector<double> y0, double t_end, const OdeOptions& options = {});

}  // namespace chenflow
