#include "chenflow/brownian.hpp"

#include <cmath>

#include "chenflow/errors.hpp"
#include "chenflow/parallel.hpp"

namespace chenflow {

BrownianSample sample_brownian_path(int dimension, double horizon, int level,
                                    std::uint64_t seed) {
    if (dimension < 1 || horizon <= 0.0 || level < 1 || level > 24)
        throw config_error("sample_brownian_path needs d >= 1, t > 0, 1 <= level <= 24");
    const int segments = 1 << level;
    const double dt = horizon / segments;
    const double sd = std::sqrt(dt);
    GaussianStream gauss(seed, 0);
    BrownianSample out{dimension, horizon, level, seed, {}};
    out.path.times.resize(segments + 1);
    out.path.slopes.assign(segments, std::vector<double>(dimension));
    for (int m = 0; m <= segments; ++m) out.path.times[m] = dt * m;
    for (int m = 0; m < segments; ++m)
        for (int i = 0; i < dimension; ++i) out.path.slopes[m][i] = sd * gauss.next() / dt;
    return out;
}

DenseSeries dense_path_signature(const WordTable& table,
                                 const PiecewiseLinearPath<double>& path) {
    DenseSeries sig = dense_unit(table);
    DenseSeries segment(table.size()), product(table.size());
    std::vector<double> increments(path.dimension());
    for (int m = 0; m < path.segments(); ++m) {
        const double dt = path.duration(m);
        for (int i = 0; i < path.dimension(); ++i) increments[i] = path.slopes[m][i] * dt;
        dense_push_segment(table, sig, dt, increments.data(), segment, product);
    }
    return sig;
}

McSignature expected_signature_mc(int dimension, double t, int max_degree,
                                  std::size_t samples, int level, std::uint64_t seed,
                                  int workers) {
    if (samples < 1) throw config_error("expected_signature_mc needs samples >= 1");
    auto table = std::make_shared<WordTable>(dimension, max_degree, Grading::scaling);
    const int n_words = table->size();
    const int segments = 1 << level;
    const double dt = t / segments;
    const double sd = std::sqrt(dt);

    const std::size_t block = 1024;
    const std::size_t blocks = block_count(samples, block);
    std::vector<std::vector<double>> block_sum(blocks), block_sumsq(blocks);

    parallel_for_blocks(samples, block, workers, [&](std::size_t b, std::size_t begin,
                                                     std::size_t end) {
        std::vector<double> sum(n_words, 0.0), sumsq(n_words, 0.0);
        DenseSeries sig, segment(n_words), product(n_words);
        std::vector<double> increments(dimension);
        for (std::size_t s = begin; s < end; ++s) {
            GaussianStream gauss(seed, s);
            sig = dense_unit(*table);
            for (int m = 0; m < segments; ++m) {
                for (int i = 0; i < dimension; ++i) increments[i] = sd * gauss.next();
                dense_push_segment(*table, sig, dt, increments.data(), segment, product);
            }
            for (int w = 0; w < n_words; ++w) {
                sum[w] += sig[w];
                sumsq[w] += sig[w] * sig[w];
            }
        }
        block_sum[b] = std::move(sum);
        block_sumsq[b] = std::move(sumsq);
    });

    // Fold blocks in index order: the reduction is identical for any worker count.
    std::vector<double> sum(n_words, 0.0), sumsq(n_words, 0.0);
    for (std::size_t b = 0; b < blocks; ++b)
        for (int w = 0; w < n_words; ++w) {
            sum[w] += block_sum[b][w];
            sumsq[w] += block_sumsq[b][w];
        }

    McSignature out;
    out.table = table;
    out.samples = samples;
    out.mean.resize(n_words);
    out.std_error.resize(n_words);
    const double n = static_cast<double>(samples);
    for (int w = 0; w < n_words; ++w) {
        out.mean[w] = sum[w] / n;
        if (samples > 1) {
            const double var = std::max(0.0, (sumsq[w] - n * out.mean[w] * out.mean[w]) / (n - 1));
            out.std_error[w] = std::sqrt(var / n);
        }
    }
    return out;
}

}  // namespace chenflow
