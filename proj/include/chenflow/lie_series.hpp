#pragma once

#include <cmath>
#include <vector>

#include "chenflow/tensor_series.hpp"

namespace chenflow {

// Tensor expansion of the right-nested commutator
// X_I = [X_{i1}, [X_{i2}, ..., [X_{i_{k-1}}, X_{i_k}]...].
template <typename S>
TensorSeries<S> expand_nested_bracket(const Word& word, int alphabet, int max_degree,
                                      Grading grading = Grading::scaling) {
    if (word.empty()) throw domain_error("bracket word must have length >= 1");
    validate_word(word, alphabet);
    TensorSeries<S> out =
        TensorSeries<S>::generator(word.back(), alphabet, max_degree, grading);
    for (int pos = static_cast<int>(word.size()) - 2; pos >= 0; --pos) {
        TensorSeries<S> x =
            TensorSeries<S>::generator(word[pos], alphabet, max_degree, grading);
        out = x * out - out * x;
    }
    return out;
}

namespace detail {

// Dynkin map on a homogeneous component: replace each word by its
// right-nested bracket expansion, keeping the coefficient.
template <typename S>
TensorSeries<S> dynkin_bracketing(const TensorSeries<S>& component) {
    TensorSeries<S> out(component.alphabet(), component.max_degree(), component.grading());
    for (const auto& [w, c] : component.coefficients()) {
        TensorSeries<S> bracket =
            expand_nested_bracket<S>(w, component.alphabet(), component.max_degree(),
                                     component.grading());
        out += bracket * c;
    }
    return out;
}

template <typename S>
TensorSeries<S> length_component(const TensorSeries<S>& a, int n) {
    TensorSeries<S> out(a.alphabet(), a.max_degree(), a.grading());
    for (const auto& [w, c] : a.coefficients())
        if (word_length(w) == n) out.set(w, c);
    return out;
}

inline bool series_close(const TensorSeries<double>& a, const TensorSeries<double>& b,
                         double tol) {
    double scale = 1.0;
    for (const auto& [w, c] : a.coefficients()) scale = std::max(scale, std::abs(c));
    TensorSeries<double> diff = a - b;
    for (const auto& [w, c] : diff.coefficients())
        if (std::abs(c) > tol * scale) return false;
    return true;
}

template <typename S>
bool component_is_lie(const TensorSeries<S>& component, int n, double /*tol*/) {
    return dynkin_bracketing(component) == component * S(n);
}

inline bool component_is_lie(const TensorSeries<double>& component, int n, double tol) {
    return series_close(dynkin_bracketing(component), component * double(n), tol);
}

}  // namespace detail

// Dynkin-Specht-Wever criterion: A with zero constant term is a Lie element
// iff bracketing each length-n component reproduces n times the component.
template <typename S>
bool is_lie_element(const TensorSeries<S>& a, double tol = 1e-9) {
    if (!scalar_traits<S>::is_zero(a.constant_term())) return false;
    int max_len = 0;
    for (const auto& [w, c] : a.coefficients())
        max_len = std::max(max_len, word_length(w));
    for (int n = 1; n <= max_len; ++n) {
        if (!detail::component_is_lie(detail::length_component(a, n), n, tol)) return false;
    }
    return true;
}

// Lie series in the (over-complete) nested-bracket coordinates X_I.  Stored
// coefficients are the canonical Dynkin representatives, which makes equality
// well-defined.
template <typename S>
class LieSeries {
public:
    using coeff_map = std::map<Word, S, ShortLex>;

    LieSeries(int alphabet, int max_degree, Grading grading = Grading::scaling)
        : alphabet_(alphabet), max_degree_(max_degree), grading_(grading) {}

    int alphabet() const { return alphabet_; }
    int max_degree() const { return max_degree_; }
    Grading grading() const { return grading_; }
    const coeff_map& coefficients() const { return coeffs_; }

    S get(const Word& w) const {
        auto it = coeffs_.find(w);
        return it == coeffs_.end() ? S(0) : it->second;
    }

    void set(const Word& w, S value) {
        if (w.empty()) throw domain_error("bracket words have length >= 1");
        validate_word(w, alphabet_);
        if (word_degree(w, grading_) > max_degree_) return;
        if (scalar_traits<S>::is_zero(value))
            coeffs_.erase(w);
        else
            coeffs_[w] = std::move(value);
    }

    TensorSeries<S> expand() const {
        TensorSeries<S> out(alphabet_, max_degree_, grading_);
        for (const auto& [w, c] : coeffs_)
            out += expand_nested_bracket<S>(w, alphabet_, max_degree_, grading_) * c;
        return out;
    }

    bool operator==(const LieSeries& other) const {
        return alphabet_ == other.alphabet_ && max_degree_ == other.max_degree_ &&
               grading_ == other.grading_ && coeffs_ == other.coeffs_;
    }

private:
    int alphabet_;
    int max_degree_;
    Grading grading_;
    coeff_map coeffs_;
};

// Dynkin projection: for a Lie element A, the series with X_I coefficient
// A(I)/|I| expands back to A exactly.
template <typename S>
LieSeries<S> lie_series_from_tensor(const TensorSeries<S>& a, double tol = 1e-9) {
    if (!is_lie_element(a, tol)) throw domain_error("series is not a Lie element");
    LieSeries<S> out(a.alphabet(), a.max_degree(), a.grading());
    for (const auto& [w, c] : a.coefficients())
        out.set(w, c * scalar_ratio<S>(1, word_length(w)));
    return out;
}

// log of a product of exponentials of linear elements, as a Lie series.
// The tensor route (multiply, log, project) defines correctness; the explicit
// descent-weighted sums below are cross-checks only.
template <typename S>
LieSeries<S> bch_dynkin(const std::vector<std::vector<S>>& ys, int alphabet, int max_degree,
                        Grading grading = Grading::scaling) {
    if (ys.empty()) throw domain_error("bch_dynkin needs at least one factor");
    TensorSeries<S> product = TensorSeries<S>::unit(alphabet, max_degree, grading);
    for (const auto& y : ys) {
        if (static_cast<int>(y.size()) != alphabet + 1)
            throw config_error("bch_dynkin factors must be vectors in R^{d+1}");
        TensorSeries<S> linear(alphabet, max_degree, grading);
        for (int i = 0; i <= alphabet; ++i) linear.set(Word{i}, y[i]);
        product = product * ts_exp(linear);
    }
    return lie_series_from_tensor(ts_log(product));
}

namespace detail {

inline long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long out = 1;
    for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
    return out;
}

// Permutations of {1..k} as image vectors, generated in lexicographic order.
std::vector<std::vector<int>> all_permutations(int k);

template <typename S>
S descent_weight(int k, int e) {
    return scalar_ratio<S>(e % 2 == 0 ? 1 : -1,
                           static_cast<long long>(k) * k * binomial(k - 1, e));
}

// Word with slot m carrying letter I[sigma^{-1}(m)].
inline Word permute_slots(const Word& word, const std::vector<int>& sigma_images) {
    Permutation sigma{std::vector<int>(sigma_images)};
    Permutation inv = sigma.inverse();
    Word out(word.size());
    for (int m = 1; m <= static_cast<int>(word.size()); ++m) out[m - 1] = word[inv(m) - 1];
    return out;
}

}  // namespace detail

enum class BetaReading {
    block_factorials,  // divide by the factorial of each block size (matches the oracle)
    literal,           // divide by j_1! ... j_{N-1}! as displayed
};

// Explicit descent-weighted coefficient of X_I in
// log(prod_nu exp(sum_i y_nu^i X_i)).  Kept as a small cross-check of the
// tensor route; see tests for which reading agrees with it.
template <typename S>
S bch_beta_coefficient(const Word& word, const std::vector<std::vector<S>>& ys,
                       BetaReading reading) {
    const int k = word_length(word);
    const int n_factors = static_cast<int>(ys.size());
    if (k == 0) return S(0);
    if (k > 7) throw cost_error("beta coefficient guarded at |I| <= 7");
    S total(0);
    for (const auto& images : detail::all_permutations(k)) {
        const S weight =
            detail::descent_weight<S>(k, descent_count(Permutation{std::vector<int>(images)}));
        const Word permuted = detail::permute_slots(word, images);
        // Split positions 0 = j_0 <= j_1 <= ... <= j_{N-1} <= j_N = k.
        std::vector<int> splits(n_factors + 1, 0);
        splits[n_factors] = k;
        // Enumerate nondecreasing interior split points.
        std::vector<int> j(n_factors - 1, 0);
        while (true) {
            for (int v = 0; v < n_factors - 1; ++v) splits[v + 1] = j[v];
            S term = weight;
            for (int nu = 1; nu <= n_factors; ++nu) {
                const int lo = splits[nu - 1];
                const int hi = splits[nu];
                for (int m = lo; m < hi; ++m) term *= ys[nu - 1][permuted[m]];
                if (reading == BetaReading::block_factorials)
                    term /= scalar_factorial<S>(hi - lo);
            }
            if (reading == BetaReading::literal)
                for (int v = 0; v < n_factors - 1; ++v) term /= scalar_factorial<S>(j[v]);
            total += term;
            // next nondecreasing tuple with entries in [0, k]
            int pos = n_factors - 2;
            while (pos >= 0 && j[pos] == k) --pos;
            if (pos < 0) break;
            ++j[pos];
            for (int v = pos + 1; v < n_factors - 1; ++v) j[v] = j[pos];
        }
    }
    return total;
}

}  // namespace chenflow
