#pragma once

#include <cstdint>
#include <vector>

#include "chenflow/path.hpp"
#include "chenflow/rng.hpp"
#include "chenflow/tensor_series.hpp"
#include "chenflow/word_table.hpp"

namespace chenflow {

// Piecewise-linear Brownian sample on the dyadic grid with 2^level segments.
// Identical (d, t, level, seed) reproduces the path bit for bit.
struct BrownianSample {
    int dimension;
    double horizon;
    int level;
    std::uint64_t seed;
    PiecewiseLinearPath<double> path;

    int segments() const { return path.segments(); }
    double step() const { return horizon / path.segments(); }
    // Increment of coordinate i (1-based) over segment m.
    double increment(int m, int i) const { return path.slopes[m][i - 1] * step(); }
};

BrownianSample sample_brownian_path(int dimension, double horizon, int level,
                                    std::uint64_t seed);

// E(iterated Stratonovich integral over the word): the closed form
// t^{(n+n0)/2} / (2^{(n-n0)/2} ((n+n0)/2)!) on moment words, zero elsewhere.
template <typename S>
S stratonovich_moment(const Word& word, const S& t) {
    if (!is_moment_word(word)) return S(0);
    const int n = word_length(word);
    const int n0 = zero_count(word);
    const int half_sum = (n + n0) / 2;
    const int half_diff = (n - n0) / 2;
    return scalar_pow(t, half_sum) /
           (scalar_pow(S(2), half_diff) * scalar_factorial<S>(half_sum));
}

// exp(t (X_0 + 1/2 sum X_i^2)) truncated at max_degree (scaling grading).
template <typename S>
TensorSeries<S> expected_signature_exact(int dimension, const S& t, int max_degree,
                                         Grading grading = Grading::scaling) {
    TensorSeries<S> generatorsum(dimension, max_degree, grading);
    generatorsum.set(Word{0}, t);
    for (int i = 1; i <= dimension; ++i)
        generatorsum.set(Word{i, i}, t * scalar_ratio<S>(1, 2));
    return ts_exp(generatorsum);
}

// Sample mean of path signatures with per-word standard errors.
struct McSignature {
    std::shared_ptr<const WordTable> table;
    std::vector<double> mean;
    std::vector<double> std_error;
    std::size_t samples = 0;
};

McSignature expected_signature_mc(int dimension, double t, int max_degree,
                                  std::size_t samples, int level, std::uint64_t seed,
                                  int workers = 0);

// Dense signature of an arbitrary piecewise-linear double path.
DenseSeries dense_path_signature(const WordTable& table,
                                 const PiecewiseLinearPath<double>& path);

}  // namespace chenflow
