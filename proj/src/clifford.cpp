#include "chenflow/clifford.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace chenflow {

namespace detail {

void permutations_with_sign(int d, std::vector<std::pair<std::vector<int>, int>>& out) {
    std::vector<int> perm(d);
    for (int i = 0; i < d; ++i) perm[i] = i + 1;
    do {
        int inversions = 0;
        for (int a = 0; a < d; ++a)
            for (int b = a + 1; b < d; ++b)
                if (perm[a] > perm[b]) ++inversions;
        out.emplace_back(perm, inversions % 2 == 0 ? 1 : -1);
    } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace detail

ChernIdentity local_chern_identity_check(const CurvatureTensor<double>& r) {
    const double scale = std::pow(std::numbers::pi, -0.5 * r.dimension());
    ChernIdentity out{};
    out.supertrace_side = chern_supertrace_pi_coeff(r) * scale;
    out.euler_side = euler_form_pi_coeff(r) * scale;
    out.discrepancy = std::abs(out.supertrace_side - out.euler_side);
    return out;
}

template <typename S>
CurvatureTensor<S> parse_curvature(std::istream& in, int dimension) {
    std::vector<S> entries(static_cast<std::size_t>(dimension) * dimension * dimension * dimension,
                           S(0));
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        int i, j, k, l;
        std::string value;
        if (!(ls >> i >> j >> k >> l >> value))
            throw config_error("curvature line must read 'i j k l value'");
        if (i < 1 || j < 1 || k < 1 || l < 1 || i > dimension || j > dimension ||
            k > dimension || l > dimension)
            throw config_error("curvature indices out of range");
        entries[(((static_cast<std::size_t>(i - 1) * dimension + (j - 1)) * dimension + (k - 1)) *
                 dimension) +
                (l - 1)] = parse_scalar<S>(value);
    }
    return CurvatureTensor<S>(dimension, std::move(entries));
}

template CurvatureTensor<Rat> parse_curvature<Rat>(std::istream&, int);
template CurvatureTensor<double> parse_curvature<double>(std::istream&, int);

namespace {

constexpr double pi = std::numbers::pi;

using Metric = std::array<std::array<double, 2>, 2>;

Metric sphere_metric(double radius, double theta) {
    Metric g{};
    g[0][0] = radius * radius;
    g[0][1] = g[1][0] = 0.0;
    g[1][1] = radius * radius * std::sin(theta) * std::sin(theta);
    return g;
}

// Christoffel symbols of the chart metric at (theta, phi); phi-independent.
std::array<std::array<std::array<double, 2>, 2>, 2> sphere_christoffels(double radius,
                                                                        double theta) {
    const double h = 1e-6;
    auto dg = [&](int a, int b, int dir) {
        if (dir == 1) return 0.0;  // metric does not depend on phi
        return (sphere_metric(radius, theta + h)[a][b] -
                sphere_metric(radius, theta - h)[a][b]) /
               (2 * h);
    };
    const Metric g = sphere_metric(radius, theta);
    const double det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    Metric ginv{};
    ginv[0][0] = g[1][1] / det;
    ginv[1][1] = g[0][0] / det;
    ginv[0][1] = ginv[1][0] = -g[0][1] / det;
    std::array<std::array<std::array<double, 2>, 2>, 2> gamma{};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) {
                double acc = 0;
                for (int e = 0; e < 2; ++e)
                    acc += 0.5 * ginv[a][e] * (dg(e, c, b) + dg(b, e, c) - dg(b, c, e));
                gamma[a][b][c] = acc;
            }
    return gamma;
}

}  // namespace

double sphere_gauss_curvature_via_christoffels(double radius, double theta) {
    const double h = 1e-5;
    const auto gamma = sphere_christoffels(radius, theta);
    const auto gamma_p = sphere_christoffels(radius, theta + h);
    const auto gamma_m = sphere_christoffels(radius, theta - h);
    // R^a_{b c e} = d_c Gamma^a_{e b} - d_e Gamma^a_{c b}
    //              + Gamma^a_{c f} Gamma^f_{e b} - Gamma^a_{e f} Gamma^f_{c b},
    // evaluated for (a,b,c,e) = (theta, phi, theta, phi).
    const double d_theta_gamma_phiphi = (gamma_p[0][1][1] - gamma_m[0][1][1]) / (2 * h);
    double r_comp = d_theta_gamma_phiphi;  // d_phi terms vanish by symmetry
    for (int f = 0; f < 2; ++f)
        r_comp += gamma[0][0][f] * gamma[f][1][1] - gamma[0][1][f] * gamma[f][0][1];
    const Metric g = sphere_metric(radius, theta);
    const double r_lowered = g[0][0] * r_comp;  // R_{theta phi theta phi}
    const double det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    return r_lowered / det;
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n % 2 != 0) ++n;
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

GaussBonnetResult constant_curvature_result(int d, double kappa, double volume_analytic,
                                            double volume_quadrature,
                                            const std::string& convention) {
    const CurvatureTensor<double> r = CurvatureTensor<double>::constant_curvature(d, kappa);
    const ChernIdentity identity = local_chern_identity_check(r);
    GaussBonnetResult out{};
    out.dimension = d;
    out.sectional_curvature = kappa;
    out.omega = identity.euler_side;
    out.supertrace_side = identity.supertrace_side;
    out.discrepancy = identity.discrepancy;
    out.volume_analytic = volume_analytic;
    out.volume_quadrature = volume_quadrature;
    out.chi = identity.euler_side * volume_analytic;
    out.convention = convention;
    return out;
}

}  // namespace

GaussBonnetResult gauss_bonnet_model(ModelSpace space, double radius) {
    if (radius <= 0) throw config_error("model radius must be positive");
    switch (space) {
        case ModelSpace::sphere_d2: {
            const double kappa = sphere_gauss_curvature_via_christoffels(radius, 1.0);
            const double analytic = 4.0 * pi * radius * radius;
            const double quadrature =
                2.0 * pi *
                simpson([&](double t) { return radius * radius * std::sin(t); }, 0.0, pi, 256);
            return constant_curvature_result(
                2, kappa, analytic, quadrature,
                "R(X,Y)Z = kappa(<Y,Z>X - <X,Z>Y), kappa > 0 on spheres; fixes chi(S^2) = +2");
        }
        case ModelSpace::sphere_d4: {
            // Same constant-curvature frame tensor with kappa = 1/r^2; the
            // d = 2 chart computation pins the sign and scale of kappa.
            const double kappa = 1.0 / (radius * radius);
            const double analytic = 8.0 * pi * pi * std::pow(radius, 4) / 3.0;
            const double quadrature =
                2.0 * pi * std::pow(radius, 4) *
                simpson([](double t) { return std::pow(std::sin(t), 3); }, 0.0, pi, 256) *
                simpson([](double t) { return std::pow(std::sin(t), 2); }, 0.0, pi, 256) *
                simpson([](double t) { return std::sin(t); }, 0.0, pi, 256);
            return constant_curvature_result(
                4, kappa, analytic, quadrature,
                "R(X,Y)Z = kappa(<Y,Z>X - <X,Z>Y), kappa = 1/r^2; fixes chi(S^4) = +2");
        }
        case ModelSpace::flat_torus_d2: {
            const double analytic = 4.0 * pi * pi * radius * radius;
            return constant_curvature_result(2, 0.0, analytic, analytic,
                                             "flat metric, zero curvature");
        }
    }
    throw config_error("unknown model space");
}

}  // namespace chenflow
