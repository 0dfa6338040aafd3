#include "chenflow/flows.hpp"

#include <cmath>

#include "chenflow/parallel.hpp"
#include "chenflow/signature.hpp"
#include "chenflow/stats.hpp"

namespace chenflow {

std::vector<double> flow(const PolynomialVectorField<double>& field,
                         const std::vector<double>& x0, double tau, const OdeOptions& options) {
    if (static_cast<int>(x0.size()) != field.dimension())
        throw config_error("flow: point dimension does not match the field");
    auto rhs = [&](const std::vector<double>& y, std::vector<double>& dy) {
        field.evaluate_at(y, dy);
    };
    return dopri5(rhs, x0, tau, options);
}

CastellScheme::CastellScheme(const DrivenSystem<double>& system, int max_degree)
    : max_degree_(max_degree) {
    system.validate();
    for (const Word& w : enumerate_words(system.noise_dimension(), max_degree, Grading::scaling)) {
        if (w.empty()) continue;
        words_.push_back(w);
        brackets_.push_back(nested_field_bracket(system, w));
    }
}

std::vector<double> CastellScheme::step(const std::map<Word, double, ShortLex>& lambda,
                                        const std::vector<double>& x0,
                                        const OdeOptions& options) const {
    for (const Word& w : words_)
        if (lambda.find(w) == lambda.end())
            throw config_error("castell step: lambda is missing word " + word_to_string(w));
    std::vector<double> weights(words_.size());
    bool all_zero = true;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        weights[i] = lambda.at(words_[i]);
        all_zero = all_zero && weights[i] == 0.0;
    }
    if (all_zero) return x0;
    const std::size_t n = x0.size();
    std::vector<double> fi(n);
    auto rhs = [&](const std::vector<double>& y, std::vector<double>& dy) {
        dy.assign(n, 0.0);
        for (std::size_t i = 0; i < words_.size(); ++i) {
            if (weights[i] == 0.0 || brackets_[i].is_zero()) continue;
            brackets_[i].evaluate_at(y, fi);
            for (std::size_t j = 0; j < n; ++j) dy[j] += weights[i] * fi[j];
        }
    };
    return dopri5(rhs, x0, 1.0, options);
}

std::vector<double> castell_step(const DrivenSystem<double>& system,
                                 const std::map<Word, double, ShortLex>& lambda, int max_degree,
                                 const OdeOptions& options) {
    return CastellScheme(system, max_degree).step(lambda, system.x0, options);
}

std::vector<double> stratonovich_heun_reference(const DrivenSystem<double>& system,
                                                const BrownianSample& sample, int steps) {
    system.validate();
    if (steps != sample.segments())
        throw config_error("heun reference steps must align with the sample's dyadic grid");
    if (system.noise_dimension() != sample.dimension)
        throw config_error("system and sample noise dimensions differ");
    const std::size_t n = system.x0.size();
    const double dt = sample.step();
    std::vector<double> x = system.x0, predictor(n), fx(n), fp(n), drive(n);

    auto field_increment = [&](const std::vector<double>& y, int m, std::vector<double>& out) {
        system.fields[0].evaluate_at(y, out);
        for (std::size_t j = 0; j < n; ++j) out[j] *= dt;
        for (int i = 1; i <= sample.dimension; ++i) {
            system.fields[i].evaluate_at(y, drive);
            const double db = sample.increment(m, i);
            for (std::size_t j = 0; j < n; ++j) out[j] += drive[j] * db;
        }
    };

    for (int m = 0; m < steps; ++m) {
        field_increment(x, m, fx);
        for (std::size_t j = 0; j < n; ++j) predictor[j] = x[j] + fx[j];
        field_increment(predictor, m, fp);
        for (std::size_t j = 0; j < n; ++j) x[j] += 0.5 * (fx[j] + fp[j]);
    }
    return x;
}

std::map<Word, double, ShortLex> castell_lambda(const WordTable& table,
                                                const BrownianSample& sample) {
    DenseSeries sig = dense_path_signature(table, sample.path);
    return chen_strichartz_coeffs(to_series(table, sig), table.max_degree());
}

namespace {

struct PairAccumulator {
    double sum = 0.0;
    double sumsq = 0.0;
    void add(double v) {
        sum += v;
        sumsq += v * v;
    }
    PairAccumulator& operator+=(const PairAccumulator& o) {
        sum += o.sum;
        sumsq += o.sumsq;
        return *this;
    }
};

template <typename PerSample>
std::vector<PairAccumulator> coupled_mc(const ExperimentConfig& config, std::size_t n_t,
                                        const PerSample& per_sample) {
    const std::size_t block = 64;
    const std::size_t blocks = block_count(config.samples, block);
    std::vector<std::vector<PairAccumulator>> partial(blocks);
    parallel_for_blocks(config.samples, block, config.workers,
                        [&](std::size_t b, std::size_t begin, std::size_t end) {
                            std::vector<PairAccumulator> acc(n_t);
                            for (std::size_t s = begin; s < end; ++s) per_sample(s, acc);
                            partial[b] = std::move(acc);
                        });
    std::vector<PairAccumulator> total(n_t);
    for (std::size_t b = 0; b < blocks; ++b)
        for (std::size_t i = 0; i < n_t; ++i) total[i] += partial[b][i];
    return total;
}

double mc_std_error(const PairAccumulator& acc, std::size_t n) {
    if (n < 2) return 0.0;
    const double mean = acc.sum / n;
    const double var = std::max(0.0, (acc.sumsq - n * mean * mean) / (n - 1.0));
    return std::sqrt(var / n);
}

}  // namespace

ErrorTable strong_error_experiment(const DrivenSystem<double>& system,
                                   const ExperimentConfig& config) {
    if (config.castell_degree < 1 || config.castell_degree > 3)
        throw config_error("strong_error_experiment supports N in {1,2,3}");
    system.validate();
    const WordTable table(system.noise_dimension(), config.castell_degree, Grading::scaling);
    const CastellScheme scheme(system, config.castell_degree);
    const std::size_t n_t = config.t_grid.size();

    auto per_sample = [&](std::size_t s, std::vector<PairAccumulator>& acc) {
        for (std::size_t it = 0; it < n_t; ++it) {
            const double t = config.t_grid[it];
            // One driving path per (sample, t); both schemes consume it.
            const BrownianSample sample = sample_brownian_path(
                system.noise_dimension(), t, config.level, derive_seed(config.seed, it * 0x10001 + 1) + s);
            const auto lambda = castell_lambda(table, sample);
            const auto approx = scheme.step(lambda, system.x0, config.ode);
            const auto reference = stratonovich_heun_reference(system, sample, sample.segments());
            double err_sq = 0.0;
            for (std::size_t j = 0; j < approx.size(); ++j) {
                const double e = approx[j] - reference[j];
                err_sq += e * e;
            }
            acc[it].add(std::sqrt(err_sq));
        }
    };

    const auto totals = coupled_mc(config, n_t, per_sample);
    ErrorTable out;
    std::vector<double> errs;
    for (std::size_t it = 0; it < n_t; ++it) {
        ErrorRow row{config.t_grid[it], totals[it].sum / config.samples,
                     mc_std_error(totals[it], config.samples)};
        out.rows.push_back(row);
        errs.push_back(row.error);
    }
    const LinearFit fit = loglog_fit(config.t_grid, errs);
    out.fitted_slope = fit.slope;
    out.slope_std_error = fit.slope_std_error;
    return out;
}

ErrorTable weak_error_experiment(const DrivenSystem<double>& system,
                                 const Polynomial<double>& observable,
                                 const ExperimentConfig& config) {
    if (config.castell_degree < 1 || config.castell_degree > 3)
        throw config_error("weak_error_experiment supports N in {1,2,3}");
    system.validate();
    if (observable.variables() != system.state_dimension())
        throw config_error("observable must be a polynomial on the state space");
    const WordTable table(system.noise_dimension(), config.castell_degree, Grading::scaling);
    const CastellScheme scheme(system, config.castell_degree);
    const std::size_t n_t = config.t_grid.size();

    auto per_sample = [&](std::size_t s, std::vector<PairAccumulator>& acc) {
        for (std::size_t it = 0; it < n_t; ++it) {
            const double t = config.t_grid[it];
            const BrownianSample sample = sample_brownian_path(
                system.noise_dimension(), t, config.level, derive_seed(config.seed, it * 0x10001 + 1) + s);
            const auto lambda = castell_lambda(table, sample);
            const auto approx = scheme.step(lambda, system.x0, config.ode);
            const auto reference = stratonovich_heun_reference(system, sample, sample.segments());
            acc[it].add(observable.evaluate_at(approx) - observable.evaluate_at(reference));
        }
    };

    const auto totals = coupled_mc(config, n_t, per_sample);
    ErrorTable out;
    std::vector<double> errs;
    for (std::size_t it = 0; it < n_t; ++it) {
        ErrorRow row{config.t_grid[it], std::abs(totals[it].sum / config.samples),
                     mc_std_error(totals[it], config.samples)};
        out.rows.push_back(row);
        errs.push_back(row.error);
    }
    const LinearFit fit = loglog_fit(config.t_grid, errs);
    out.fitted_slope = fit.slope;
    out.slope_std_error = fit.slope_std_error;
    return out;
}

}  // namespace chenflow
