#include "chenflow/heat_kernel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "chenflow/brownian.hpp"
#include "chenflow/errors.hpp"
#include "chenflow/flows.hpp"
#include "chenflow/parallel.hpp"
#include "chenflow/stats.hpp"

namespace chenflow {

namespace {

constexpr double pi = std::numbers::pi;

// x/sinh(x) and x*coth(x) as functions of mu = x^2, stable near zero.
double ratio_x_over_sinh(double mu) {
    if (mu < 1e-10) return 1.0 - mu / 6.0 + 7.0 * mu * mu / 360.0;
    const double x = std::sqrt(mu);
    return x / std::sinh(x);
}

double ratio_x_coth(double mu) {
    if (mu < 1e-10) return 1.0 + mu / 3.0 - mu * mu / 45.0;
    const double x = std::sqrt(mu);
    return x / std::tanh(x);
}

double tanh_over_x(double mu) {
    if (mu < 1e-10) return 1.0 - mu / 3.0 + 2.0 * mu * mu / 15.0;
    const double x = std::sqrt(mu);
    return std::tanh(x) / x;
}

double log_cosh(double x) {
    x = std::abs(x);
    return x + std::log1p(std::exp(-2.0 * x)) - std::log(2.0);
}

// Eigenvalues mu_i >= 0 of (tA)^T (tA) = -t^2 A^2 together with the frame.
struct SkewSpectrum {
    Eigen::VectorXd mu;
    Eigen::MatrixXd frame;
};

SkewSpectrum skew_spectrum(const Eigen::MatrixXd& a, double t) {
    const Eigen::MatrixXd ta = t * a;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(ta.transpose() * ta);
    if (solver.info() != Eigen::Success) throw numeric_error("skew spectrum eigensolve failed");
    SkewSpectrum out{solver.eigenvalues().cwiseMax(0.0), solver.eigenvectors()};
    return out;
}

void require_skew(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols()) throw config_error("matrix must be square");
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if ((a + a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw config_error("matrix must be skew-symmetric");
}

}  // namespace

StructureConstants::StructureConstants(int dimension, std::vector<double> entries)
    : dim_(dimension), entries_(std::move(entries)) {
    if (dim_ < 1 || entries_.size() != static_cast<std::size_t>(dim_ * dim_ * dim_))
        throw config_error("structure constants need d^3 entries");
    for (int i = 1; i <= dim_; ++i)
        for (int j = 1; j <= dim_; ++j)
            for (int k = 1; k <= dim_; ++k) {
                if (omega(i, j, k) != -omega(j, i, k))
                    throw domain_error("structure constants violate w_ij^k = -w_ji^k");
                if (omega(i, j, k) != -omega(i, k, j))
                    throw domain_error("structure constants violate w_ij^k = -w_ik^j");
            }
}

StructureConstants StructureConstants::zero(int dimension) {
    return StructureConstants(dimension,
                              std::vector<double>(dimension * dimension * dimension, 0.0));
}

StructureConstants StructureConstants::su2_epsilon() {
    std::vector<double> entries(27, 0.0);
    auto at = [&](int i, int j, int k) -> double& {
        return entries[((i - 1) * 3 + (j - 1)) * 3 + (k - 1)];
    };
    at(1, 2, 3) = 1;
    at(2, 3, 1) = 1;
    at(3, 1, 2) = 1;
    at(2, 1, 3) = -1;
    at(3, 2, 1) = -1;
    at(1, 3, 2) = -1;
    return StructureConstants(3, std::move(entries));
}

StructureConstants StructureConstants::parse(std::istream& in, int dimension) {
    std::vector<double> entries(dimension * dimension * dimension, 0.0);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        int i, j, k;
        double value;
        if (!(ls >> i >> j >> k >> value))
            throw config_error("omega line must read 'i j k value'");
        if (i < 1 || i > dimension || j < 1 || j > dimension || k < 1 || k > dimension)
            throw config_error("omega indices out of range");
        entries[((i - 1) * dimension + (j - 1)) * dimension + (k - 1)] = value;
    }
    return StructureConstants(dimension, std::move(entries));
}

double StructureConstants::sum_of_squares() const {
    double out = 0;
    for (double v : entries_) out += v * v;
    return out;
}

bool StructureConstants::is_zero() const {
    for (double v : entries_)
        if (v != 0.0) return false;
    return true;
}

StructureConstants StructureConstants::scaled(double factor) const {
    std::vector<double> entries = entries_;
    for (double& v : entries) v *= factor;
    return StructureConstants(dim_, std::move(entries));
}

Eigen::MatrixXd StructureConstants::lambda_matrix(const Eigen::VectorXd& lambda) const {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim_, dim_);
    for (int i = 1; i <= dim_; ++i)
        for (int j = 1; j <= dim_; ++j) {
            double acc = 0;
            for (int k = 1; k <= dim_; ++k) acc += lambda[k - 1] * omega(i, j, k);
            a(i - 1, j - 1) = 0.5 * acc;
        }
    return a;
}

double a0_coefficient(const DrivenSystem<double>& system, const std::vector<double>& x0) {
    system.validate();
    const int d = system.noise_dimension();
    if (system.state_dimension() != d)
        throw domain_error("ellipticity requires state dimension equal to noise dimension");
    Eigen::MatrixXd frame(d, d);
    std::vector<double> value(d);
    for (int i = 1; i <= d; ++i) {
        system.fields[i].evaluate_at(x0, value);
        for (int r = 0; r < d; ++r) frame(r, i - 1) = value[r];
    }
    const double det = frame.determinant();
    if (std::abs(det) < 1e-12)
        throw domain_error("frame V_1(x0),...,V_d(x0) is singular (not elliptic at x0)");
    return std::pow(2.0 * pi, -0.5 * d) / std::abs(det);
}

double kde_density_at(const std::vector<std::vector<double>>& samples,
                      const std::vector<double>& point, const std::vector<double>& bandwidths) {
    if (samples.size() < 1000) throw config_error("kde_density_at needs at least 10^3 samples");
    const std::size_t d = point.size();
    if (bandwidths.size() != d) throw config_error("kde bandwidth dimension mismatch");
    double norm = std::pow(2.0 * pi, -0.5 * static_cast<double>(d));
    for (double h : bandwidths) {
        if (h <= 0) throw config_error("kde bandwidth must be positive");
        norm /= h;
    }
    double acc = 0;
    for (const auto& s : samples) {
        double q = 0;
        for (std::size_t j = 0; j < d; ++j) {
            const double u = (s[j] - point[j]) / bandwidths[j];
            q += u * u;
        }
        acc += std::exp(-0.5 * q);
    }
    return norm * acc / static_cast<double>(samples.size());
}

KdeRefined kde_density_refined(const std::vector<std::vector<double>>& samples,
                               const std::vector<double>& point,
                               const std::vector<double>& bandwidths) {
    std::vector<double> fine = bandwidths;
    for (double& h : fine) h /= std::sqrt(2.0);
    KdeRefined out{};
    out.coarse = kde_density_at(samples, point, bandwidths);
    out.fine = kde_density_at(samples, point, fine);
    out.value = 2.0 * out.fine - out.coarse;
    return out;
}

double levy_area_det_factor(const Eigen::MatrixXd& a, double t) {
    require_skew(a);
    const SkewSpectrum spec = skew_spectrum(a, t);
    if (spec.mu.size() > 0 && std::sqrt(spec.mu.maxCoeff()) >= pi)
        throw domain_error("levy_area_cf requires t * spectral_radius(A) < pi");
    double log_det_half = 0;
    for (int i = 0; i < spec.mu.size(); ++i)
        log_det_half += 0.5 * std::log(ratio_x_over_sinh(spec.mu[i]));
    return std::exp(log_det_half);
}

std::complex<double> levy_area_cf(const Eigen::MatrixXd& a, double t, const Eigen::VectorXd& z) {
    require_skew(a);
    if (z.size() != a.rows()) throw config_error("levy_area_cf endpoint dimension mismatch");
    const SkewSpectrum spec = skew_spectrum(a, t);
    if (spec.mu.size() > 0 && std::sqrt(spec.mu.maxCoeff()) >= pi)
        throw domain_error("levy_area_cf requires t * spectral_radius(A) < pi");
    double log_value = 0;
    for (int i = 0; i < spec.mu.size(); ++i) {
        log_value += 0.5 * std::log(ratio_x_over_sinh(spec.mu[i]));
        const double proj = spec.frame.col(i).dot(z);
        log_value += (1.0 - ratio_x_coth(spec.mu[i])) / (2.0 * t) * proj * proj;
    }
    return {std::exp(log_value), 0.0};
}

namespace {

// Endpoint and pairwise Levy areas of one piecewise-linear Brownian path at
// horizon 1, generated on the fly.
struct PathFunctionals {
    std::vector<double> endpoint;       // d
    std::vector<double> areas;          // d(d-1)/2, pairs (i<j)
};

PathFunctionals horizon1_functionals(int d, int level, std::uint64_t seed,
                                     std::uint64_t sample_index) {
    const int segments = 1 << level;
    const double sd = std::sqrt(1.0 / segments);
    GaussianStream gauss(seed, sample_index);
    PathFunctionals out;
    out.endpoint.assign(d, 0.0);
    out.areas.assign(d * (d - 1) / 2, 0.0);
    std::vector<double> delta(d);
    for (int m = 0; m < segments; ++m) {
        for (int i = 0; i < d; ++i) delta[i] = sd * gauss.next();
        int pair = 0;
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j, ++pair)
                out.areas[pair] += out.endpoint[i] * delta[j] - out.endpoint[j] * delta[i];
        for (int i = 0; i < d; ++i) out.endpoint[i] += delta[i];
    }
    return out;
}

std::vector<double> tangent_from_functionals(const StructureConstants& omega,
                                             const PathFunctionals& f, double t) {
    const int d = omega.dimension();
    const double sqrt_t = std::sqrt(t);
    std::vector<double> theta(d);
    for (int k = 1; k <= d; ++k) {
        double value = sqrt_t * f.endpoint[k - 1];
        int pair = 0;
        for (int i = 1; i <= d; ++i)
            for (int j = i + 1; j <= d; ++j, ++pair)
                value += 0.5 * omega.omega(i, j, k) * t * f.areas[pair];
        theta[k - 1] = value;
    }
    return theta;
}

}  // namespace

std::vector<double> sample_tangent_variable(const StructureConstants& omega, double t, int level,
                                            std::uint64_t seed) {
    if (t <= 0 || level < 1 || level > 24)
        throw config_error("sample_tangent_variable needs t > 0 and 1 <= level <= 24");
    return tangent_from_functionals(omega, horizon1_functionals(omega.dimension(), level, seed, 0),
                                    t);
}

std::vector<std::vector<std::vector<double>>> tangent_samples_on_grid(
    const StructureConstants& omega, const std::vector<double>& t_grid, int level,
    std::size_t samples, std::uint64_t seed, int workers) {
    const int d = omega.dimension();
    std::vector<std::vector<std::vector<double>>> out(
        t_grid.size(), std::vector<std::vector<double>>(samples));
    parallel_for_blocks(samples, 256, workers,
                        [&](std::size_t, std::size_t begin, std::size_t end) {
                            for (std::size_t s = begin; s < end; ++s) {
                                const PathFunctionals f =
                                    horizon1_functionals(d, level, seed, s);
                                for (std::size_t it = 0; it < t_grid.size(); ++it)
                                    out[it][s] = tangent_from_functionals(omega, f, t_grid[it]);
                            }
                        });
    return out;
}

double tangent_density_quadrature(const StructureConstants& omega, double t, double rel_tol) {
    if (t <= 0) throw config_error("tangent_density_quadrature needs t > 0");
    const int d = omega.dimension();

    // Fast path: w = 0 means theta_t is exactly Gaussian.
    if (omega.is_zero()) return std::pow(2.0 * pi * t, -0.5 * d);

    const double scale = std::sqrt(2.0 / t);
    double previous = 0.0;
    bool have_previous = false;
    for (int order : {8, 12, 16, 24, 32, 48, 64}) {
        // Gauss-Hermite rule for weight e^{-x^2} via the Jacobi matrix.
        Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
        for (int i = 1; i < order; ++i) {
            const double off = std::sqrt(0.5 * i);
            jacobi(i - 1, i) = off;
            jacobi(i, i - 1) = off;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
        const Eigen::VectorXd nodes = solver.eigenvalues();
        Eigen::VectorXd weights(order);
        for (int i = 0; i < order; ++i) {
            const double v0 = solver.eigenvectors()(0, i);
            weights[i] = std::sqrt(pi) * v0 * v0;
        }

        double total = 0.0;
        std::vector<int> idx(d, 0);
        Eigen::VectorXd lambda(d);
        for (;;) {
            double w = 1.0;
            for (int j = 0; j < d; ++j) {
                w *= weights[idx[j]];
                lambda[j] = scale * nodes[idx[j]];
            }
            const Eigen::MatrixXd a = omega.lambda_matrix(lambda);
            const SkewSpectrum spec = skew_spectrum(a, t);
            double log_factor = 0.0;
            double qform = 0.0;
            for (int i = 0; i < d; ++i) {
                log_factor -= 0.5 * log_cosh(std::sqrt(spec.mu[i]));
                const double proj = spec.frame.col(i).dot(lambda);
                qform += t * tanh_over_x(spec.mu[i]) * proj * proj;
            }
            if (qform < 0)
                throw numeric_error("tangent density integrand: negative quadratic form");
            const double residual = -0.5 * (qform - t * lambda.squaredNorm());
            total += w * std::exp(log_factor + residual);

            int j = 0;
            while (j < d && ++idx[j] == order) idx[j++] = 0;
            if (j == d) break;
        }
        const double value = std::pow(2.0 * pi, -d) * std::pow(2.0 / t, 0.5 * d) * total;
        if (have_previous && std::abs(value - previous) <= rel_tol * std::abs(value))
            return value;
        previous = value;
        have_previous = true;
    }
    throw numeric_error(
        "tangent density quadrature did not reach the requested tolerance by order 64 "
        "(t = " + std::to_string(t) + ")");
}

A1Check a1_expansion_check(const StructureConstants& omega, const std::vector<double>& t_grid) {
    A1Check out;
    out.t_grid = t_grid;
    const int d = omega.dimension();
    for (double t : t_grid)
        out.normalized.push_back(std::pow(2.0 * pi * t, 0.5 * d) *
                                 tangent_density_quadrature(omega, t));
    const LinearFit fit = linear_fit(t_grid, out.normalized);
    out.fitted_slope = fit.slope;
    out.slope_std_error = fit.slope_std_error;
    out.expected_slope = -omega.sum_of_squares() / 16.0;
    return out;
}

HeatDensityEstimate heat_density_mc(const DrivenSystem<double>& system,
                                    const std::vector<double>& x0, double t,
                                    std::size_t samples, int level, std::uint64_t seed,
                                    int workers, double bandwidth_factor) {
    system.validate();
    a0_coefficient(system, x0);  // ellipticity check
    std::vector<std::vector<double>> endpoints(samples);
    parallel_for_blocks(samples, 256, workers,
                        [&](std::size_t, std::size_t begin, std::size_t end) {
                            for (std::size_t s = begin; s < end; ++s) {
                                const BrownianSample sample = sample_brownian_path(
                                    system.noise_dimension(), t, level, derive_seed(seed, s));
                                endpoints[s] = stratonovich_heun_reference(system, sample,
                                                                           sample.segments());
                            }
                        });
    const std::vector<double> bandwidths = silverman_bandwidths(endpoints, bandwidth_factor);
    HeatDensityEstimate out{};
    out.bandwidths = bandwidths;
    out.density = kde_density_at(endpoints, x0, bandwidths);
    std::vector<double> halved = bandwidths;
    for (double& h : halved) h *= 0.5;
    out.density_half_bandwidth = kde_density_at(endpoints, x0, halved);
    // Standard error of the mean of kernel evaluations.
    {
        const std::size_t d = x0.size();
        double norm = std::pow(2.0 * pi, -0.5 * static_cast<double>(d));
        for (double h : bandwidths) norm /= h;
        double sum = 0, sumsq = 0;
        for (const auto& s : endpoints) {
            double q = 0;
            for (std::size_t j = 0; j < d; ++j) {
                const double u = (s[j] - x0[j]) / bandwidths[j];
                q += u * u;
            }
            const double k = norm * std::exp(-0.5 * q);
            sum += k;
            sumsq += k * k;
        }
        const double n = static_cast<double>(samples);
        const double mean = sum / n;
        const double var = std::max(0.0, (sumsq - n * mean * mean) / (n - 1));
        out.std_error = std::sqrt(var / n);
    }
    return out;
}

}  // namespace chenflow
