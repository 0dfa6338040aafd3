#pragma once

#include <map>

#include "chenflow/lie_series.hpp"
#include "chenflow/path.hpp"
#include "chenflow/tensor_series.hpp"

namespace chenflow {

// exp(dt (X_0 + sum_i a^i X_i)): signature of one affine segment.  The
// coefficient of a word I is prod_j abar^{i_j} dt^k / k! with abar^0 = 1.
template <typename S>
TensorSeries<S> segment_signature(const std::vector<S>& slope, const S& dt, int max_degree,
                                  Grading grading = Grading::scaling) {
    const int d = static_cast<int>(slope.size());
    TensorSeries<S> linear(d, max_degree, grading);
    linear.set(Word{0}, dt);
    for (int i = 1; i <= d; ++i) linear.set(Word{i}, slope[i - 1] * dt);
    return ts_exp(linear);
}

// Ordered product of segment signatures; the coefficient of a word equals the
// iterated integral of the path against that word.
template <typename S>
TensorSeries<S> path_signature(const PiecewiseLinearPath<S>& path, int max_degree,
                               Grading grading = Grading::scaling) {
    path.validate();
    TensorSeries<S> out =
        TensorSeries<S>::unit(path.dimension(), max_degree, grading);
    for (int m = 0; m < path.segments(); ++m)
        out = out * segment_signature(path.slopes[m], path.duration(m), max_degree, grading);
    return out;
}

// Signature of the time-reversed augmented path: the product of the segment
// exponentials inverted and taken in reverse order.  Equals the group inverse
// of the signature.
template <typename S>
TensorSeries<S> path_signature_reversed(const PiecewiseLinearPath<S>& path, int max_degree,
                                        Grading grading = Grading::scaling) {
    path.validate();
    TensorSeries<S> out =
        TensorSeries<S>::unit(path.dimension(), max_degree, grading);
    for (int m = path.segments() - 1; m >= 0; --m) {
        const int d = path.dimension();
        TensorSeries<S> linear(d, max_degree, grading);
        linear.set(Word{0}, S(0) - path.duration(m));
        for (int i = 1; i <= d; ++i)
            linear.set(Word{i}, S(0) - path.slopes[m][i - 1] * path.duration(m));
        out = out * ts_exp(linear);
    }
    return out;
}

template <typename S>
TensorSeries<S> log_signature(const PiecewiseLinearPath<S>& path, int max_degree,
                              Grading grading = Grading::scaling) {
    return ts_log(path_signature(path, max_degree, grading));
}

// Brute-force iterated integral over the time simplex, by exact per-segment
// polynomial integration.  Independent of the tensor-algebra route; this is
// the oracle the signature is checked against.
template <typename S>
S iterated_integral_oracle(const PiecewiseLinearPath<S>& path, const Word& word) {
    path.validate();
    validate_word(word, path.dimension());
    if (word_length(word) > 6) throw cost_error("iterated integral oracle guarded at |I| <= 6");
    const int segments = path.segments();
    // Inner integrand as one polynomial in local time per segment,
    // coefficients indexed by power.
    std::vector<std::vector<S>> poly(segments, std::vector<S>{S(1)});
    for (int letter : word) {
        std::vector<std::vector<S>> next(segments);
        S running(0);  // value of the new integral at the segment start
        for (int m = 0; m < segments; ++m) {
            const S rate = letter == 0 ? S(1) : path.slopes[m][letter - 1];
            std::vector<S> antiderivative(poly[m].size() + 1, S(0));
            antiderivative[0] = running;
            for (std::size_t p = 0; p < poly[m].size(); ++p)
                antiderivative[p + 1] =
                    rate * poly[m][p] * scalar_ratio<S>(1, static_cast<long long>(p) + 1);
            // advance the running value to the end of the segment
            const S dt = path.duration(m);
            S value(0);
            S power(1);
            for (const S& c : antiderivative) {
                value += c * power;
                power *= dt;
            }
            running = value;
            next[m] = std::move(antiderivative);
        }
        poly = std::move(next);
    }
    // Value at the horizon = running value after the last segment.
    S value(0);
    S power(1);
    const S dt = path.duration(segments - 1);
    for (const S& c : poly[segments - 1]) {
        value += c * power;
        power *= dt;
    }
    return value;
}

namespace detail {

template <typename S>
S chen_strichartz_single(const TensorSeries<S>& sig, const Word& word) {
    const int k = word_length(word);
    if (k > 7) throw cost_error("descent sum guarded at |I| <= 7");
    S total(0);
    for (const auto& images : all_permutations(k)) {
        const Permutation sigma{std::vector<int>(images)};
        total += descent_weight<S>(k, descent_count(sigma)) *
                 sig.get(permute_slots(word, images));
    }
    return total;
}

}  // namespace detail

// Log-signature coordinates on the nested brackets X_I: descent-weighted
// permutation sums of signature coefficients, for every word with degree <= N.
template <typename S>
std::map<Word, S, ShortLex> chen_strichartz_coeffs(const TensorSeries<S>& sig,
                                                   int max_degree) {
    std::map<Word, S, ShortLex> out;
    for (const Word& w : enumerate_words(sig.alphabet(), max_degree, sig.grading())) {
        if (w.empty()) continue;
        S value = detail::chen_strichartz_single(sig, w);
        if (!scalar_traits<S>::is_zero(value)) out[w] = std::move(value);
    }
    return out;
}

template <typename S>
LieSeries<S> chen_strichartz_series(const TensorSeries<S>& sig, int max_degree) {
    LieSeries<S> out(sig.alphabet(), max_degree, sig.grading());
    for (auto& [w, c] : chen_strichartz_coeffs(sig, max_degree)) out.set(w, c);
    return out;
}

}  // namespace chenflow
