#pragma once

#include <cstdint>
#include <map>

#include "chenflow/brownian.hpp"
#include "chenflow/ode.hpp"
#include "chenflow/vector_field.hpp"
#include "chenflow/word_table.hpp"

namespace chenflow {

// e^{tau V}(x0) by adaptive Runge-Kutta integration.
std::vector<double> flow(const PolynomialVectorField<double>& field,
                         const std::vector<double>& x0, double tau,
                         const OdeOptions& options = {});

// Precomputed nested bracket fields V_I for one system and truncation level
// so the per-sample step only combines and integrates.
class CastellScheme {
public:
    CastellScheme(const DrivenSystem<double>& system, int max_degree);

    const std::vector<Word>& words() const { return words_; }
    int max_degree() const { return max_degree_; }

    // flow(sum_I lambda_I V_I, x0, 1): one step of the approximation.
    std::vector<double> step(const std::map<Word, double, ShortLex>& lambda,
                             const std::vector<double>& x0, const OdeOptions& options = {}) const;

private:
    int max_degree_;
    std::vector<Word> words_;
    std::vector<PolynomialVectorField<double>> brackets_;
};

std::vector<double> castell_step(const DrivenSystem<double>& system,
                                 const std::map<Word, double, ShortLex>& lambda, int max_degree,
                                 const OdeOptions& options = {});

// Midpoint-corrected Euler along the sampled increments; consistent with the
// Stratonovich reading of the noise.
std::vector<double> stratonovich_heun_reference(const DrivenSystem<double>& system,
                                                const BrownianSample& sample, int steps);

struct ErrorRow {
    double t;
    double error;       // mean strong error, or |weak error|
    double std_error;   // Monte Carlo standard error of the mean
};

struct ErrorTable {
    std::vector<ErrorRow> rows;
    double fitted_slope = 0.0;
    double slope_std_error = 0.0;
};

struct ExperimentConfig {
    int castell_degree = 2;        // N
    std::vector<double> t_grid;
    std::size_t samples = 2000;
    int level = 12;                // dyadic refinement of the driving paths
    std::uint64_t seed = 1;
    int workers = 0;
    OdeOptions ode;
};

// Per t: mean over coupled samples of |castell - reference| plus the fitted
// log-log slope.  Both schemes consume the same sampled path.
ErrorTable strong_error_experiment(const DrivenSystem<double>& system,
                                   const ExperimentConfig& config);

// Per t: |E f(castell) - E f(reference)| estimated on coupled samples.
ErrorTable weak_error_experiment(const DrivenSystem<double>& system,
                                 const Polynomial<double>& observable,
                                 const ExperimentConfig& config);

// Chen-Strichartz coefficients of one sampled path, truncated at max_degree.
std::map<Word, double, ShortLex> castell_lambda(const WordTable& table,
                                                const BrownianSample& sample);

}  // namespace chenflow
