#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <istream>
#include <vector>

#include "chenflow/vector_field.hpp"

namespace chenflow {

// Frame structure constants w_ij^k with the two skew symmetries
// w_ij^k = -w_ji^k and w_ij^k = -w_ik^j.
class StructureConstants {
public:
    StructureConstants(int dimension, std::vector<double> entries);

    static StructureConstants zero(int dimension);
    // d = 3, w_ij^k = epsilon_ijk.
    static StructureConstants su2_epsilon();
    // Lines "i j k value" (1-based); unlisted entries are zero.
    static StructureConstants parse(std::istream& in, int dimension);

    int dimension() const { return dim_; }
    double omega(int i, int j, int k) const {  // 1-based indices
        return entries_[((i - 1) * dim_ + (j - 1)) * dim_ + (k - 1)];
    }
    double sum_of_squares() const;
    bool is_zero() const;
    StructureConstants scaled(double factor) const;

    // A(lambda)_ij = 1/2 sum_k lambda_k w_ij^k.
    Eigen::MatrixXd lambda_matrix(const Eigen::VectorXd& lambda) const;

private:
    int dim_;
    std::vector<double> entries_;
};

// a_0(x0) = (2 pi)^{-d/2} / |det(V_1(x0),...,V_d(x0))|.
double a0_coefficient(const DrivenSystem<double>& system, const std::vector<double>& x0);

// Gaussian product-kernel density estimate at a point.
double kde_density_at(const std::vector<std::vector<double>>& samples,
                      const std::vector<double>& point, const std::vector<double>& bandwidths);

inline double kde_density_at(const std::vector<std::vector<double>>& samples,
                             const std::vector<double>& point, double bandwidth) {
    return kde_density_at(samples, point,
                          std::vector<double>(point.size(), bandwidth));
}

// Bandwidth-halving refinement: eliminates the leading O(h^2) kernel bias and
// reports both raw values for stability checks.
struct KdeRefined {
    double value;        // extrapolated estimate
    double coarse;       // estimate at h
    double fine;         // estimate at h / sqrt(2)
};
KdeRefined kde_density_refined(const std::vector<std::vector<double>>& samples,
                               const std::vector<double>& point,
                               const std::vector<double>& bandwidths);

// E( e^{i int (A B_s, dB_s)} | B_t = z ) for skew-symmetric A, evaluated
// through even spectral functions of A^2.
std::complex<double> levy_area_cf(const Eigen::MatrixXd& a, double t, const Eigen::VectorXd& z);

// Determinant factor det(tA/sin tA)^{1/2} of the formula above.
double levy_area_det_factor(const Eigen::MatrixXd& a, double t);

// One draw of theta_t = (B_t^k + 1/2 sum_{i<j} w_ij^k area_ij)_k from a
// piecewise-linear path with 2^level segments.
std::vector<double> sample_tangent_variable(const StructureConstants& omega, double t, int level,
                                            std::uint64_t seed);

// Batch of tangent-variable draws for each t in t_grid, all scaled from one
// set of horizon-1 path functionals (Brownian scaling).
std::vector<std::vector<std::vector<double>>> tangent_samples_on_grid(
    const StructureConstants& omega, const std::vector<double>& t_grid, int level,
    std::size_t samples, std::uint64_t seed, int workers = 0);

// q_t(0): density at zero of theta_t.  The Gaussian y-integral of the
// Fourier representation is reduced in closed form; the remaining lambda
// integral uses adaptive tensor Gauss-Hermite quadrature.
double tangent_density_quadrature(const StructureConstants& omega, double t,
                                  double rel_tol = 1e-6);

struct A1Check {
    std::vector<double> t_grid;
    std::vector<double> normalized;  // (2 pi t)^{d/2} q_t(0)
    double fitted_slope = 0.0;
    double slope_std_error = 0.0;
    double expected_slope = 0.0;  // -(1/16) sum (w_ij^k)^2
};

A1Check a1_expansion_check(const StructureConstants& omega, const std::vector<double>& t_grid);

struct HeatDensityEstimate {
    double density;
    double std_error;
    std::vector<double> bandwidths;
    double density_half_bandwidth;
};

// KDE estimate of p_t(x0, x0) from reference-solver trajectories.
HeatDensityEstimate heat_density_mc(const DrivenSystem<double>& system,
                                    const std::vector<double>& x0, double t,
                                    std::size_t samples, int level, std::uint64_t seed,
                                    int workers = 0, double bandwidth_factor = 0.5);

}  // namespace chenflow
