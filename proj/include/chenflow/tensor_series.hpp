#pragma once

#include <map>
#include <ostream>
#include <sstream>
#include <utility>

#include "chenflow/rational.hpp"
#include "chenflow/word.hpp"

namespace chenflow {

// Truncated element of the free associative algebra R[[X_0,...,X_d]].
// Words above the truncation degree are dropped; absent words mean
// coefficient zero and exact zeros are pruned after arithmetic.
template <typename S>
class TensorSeries {
public:
    using coeff_map = std::map<Word, S, ShortLex>;

    TensorSeries(int alphabet, int max_degree, Grading grading = Grading::scaling)
        : alphabet_(alphabet), max_degree_(max_degree), grading_(grading) {}

    static TensorSeries unit(int alphabet, int max_degree, Grading grading = Grading::scaling) {
        TensorSeries out(alphabet, max_degree, grading);
        out.set(Word{}, S(1));
        return out;
    }

    static TensorSeries generator(int letter, int alphabet, int max_degree,
                                  Grading grading = Grading::scaling) {
        TensorSeries out(alphabet, max_degree, grading);
        out.set(Word{letter}, S(1));
        return out;
    }

    int alphabet() const { return alphabet_; }
    int max_degree() const { return max_degree_; }
    Grading grading() const { return grading_; }
    const coeff_map& coefficients() const { return coeffs_; }

    S get(const Word& w) const {
        auto it = coeffs_.find(w);
        return it == coeffs_.end() ? S(0) : it->second;
    }

    void set(const Word& w, S value) {
        validate_word(w, alphabet_);
        if (word_degree(w, grading_) > max_degree_) return;
        if (scalar_traits<S>::is_zero(value))
            coeffs_.erase(w);
        else
            coeffs_[w] = std::move(value);
    }

    void add_to(const Word& w, const S& value) { set(w, get(w) + value); }

    bool is_zero() const { return coeffs_.empty(); }

    S constant_term() const { return get(Word{}); }

    // Smallest degree carrying a nonzero coefficient; max_degree + 1 if zero.
    int min_degree() const {
        int best = max_degree_ + 1;
        for (const auto& [w, c] : coeffs_) best = std::min(best, word_degree(w, grading_));
        return best;
    }

    TensorSeries& operator+=(const TensorSeries& other) {
        require_compatible(other);
        for (const auto& [w, c] : other.coeffs_) add_to(w, c);
        return *this;
    }

    TensorSeries& operator-=(const TensorSeries& other) {
        require_compatible(other);
        for (const auto& [w, c] : other.coeffs_) add_to(w, S(0) - c);
        return *this;
    }

    TensorSeries& operator*=(const S& scalar) {
        if (scalar_traits<S>::is_zero(scalar)) {
            coeffs_.clear();
            return *this;
        }
        for (auto& [w, c] : coeffs_) c *= scalar;
        return *this;
    }

    friend TensorSeries operator+(TensorSeries a, const TensorSeries& b) { return a += b; }
    friend TensorSeries operator-(TensorSeries a, const TensorSeries& b) { return a -= b; }
    friend TensorSeries operator*(TensorSeries a, const S& s) { return a *= s; }
    friend TensorSeries operator*(const S& s, TensorSeries a) { return a *= s; }

    // Concatenation product, truncated at max_degree.
    friend TensorSeries operator*(const TensorSeries& a, const TensorSeries& b) {
        a.require_compatible(b);
        TensorSeries out(a.alphabet_, a.max_degree_, a.grading_);
        for (const auto& [u, cu] : a.coeffs_) {
            const int du = word_degree(u, a.grading_);
            for (const auto& [v, cv] : b.coeffs_) {
                if (du + word_degree(v, a.grading_) > a.max_degree_) continue;
                out.add_to(concat(u, v), cu * cv);
            }
        }
        return out;
    }

    bool operator==(const TensorSeries& other) const {
        return alphabet_ == other.alphabet_ && max_degree_ == other.max_degree_ &&
               grading_ == other.grading_ && coeffs_ == other.coeffs_;
    }

    void require_compatible(const TensorSeries& other) const {
        if (alphabet_ != other.alphabet_ || max_degree_ != other.max_degree_ ||
            grading_ != other.grading_)
            throw config_error("tensor series have mismatched alphabet/truncation/grading");
    }

private:
    int alphabet_;
    int max_degree_;
    Grading grading_;
    coeff_map coeffs_;
};

// exp(A) = sum A^k / k!; requires zero constant term.
template <typename S>
TensorSeries<S> ts_exp(const TensorSeries<S>& a) {
    if (!scalar_traits<S>::is_zero(a.constant_term()))
        throw domain_error("ts_exp requires zero constant term");
    TensorSeries<S> out = TensorSeries<S>::unit(a.alphabet(), a.max_degree(), a.grading());
    TensorSeries<S> term = TensorSeries<S>::unit(a.alphabet(), a.max_degree(), a.grading());
    for (int k = 1; k <= a.max_degree(); ++k) {
        term = term * a;
        term *= scalar_ratio<S>(1, k);
        if (term.is_zero()) break;
        out += term;
    }
    return out;
}

// log(A) = sum (-1)^{k+1} (A-1)^k / k; requires constant term one.
template <typename S>
TensorSeries<S> ts_log(const TensorSeries<S>& a) {
    if (!(a.constant_term() == S(1)))
        throw domain_error("ts_log requires constant term equal to one");
    TensorSeries<S> n = a;
    n.add_to(Word{}, S(-1));
    TensorSeries<S> out(a.alphabet(), a.max_degree(), a.grading());
    TensorSeries<S> power = TensorSeries<S>::unit(a.alphabet(), a.max_degree(), a.grading());
    for (int k = 1; k <= a.max_degree(); ++k) {
        power = power * n;
        if (power.is_zero()) break;
        out += power * scalar_ratio<S>(k % 2 == 1 ? 1 : -1, k);
    }
    return out;
}

// Geometric inverse of a series with constant term one: (1+n)^{-1} = sum (-n)^k.
template <typename S>
TensorSeries<S> ts_inverse(const TensorSeries<S>& a) {
    if (!(a.constant_term() == S(1)))
        throw domain_error("ts_inverse requires constant term equal to one");
    TensorSeries<S> n = a;
    n.add_to(Word{}, S(-1));
    TensorSeries<S> out = TensorSeries<S>::unit(a.alphabet(), a.max_degree(), a.grading());
    TensorSeries<S> power = TensorSeries<S>::unit(a.alphabet(), a.max_degree(), a.grading());
    for (int k = 1; k <= a.max_degree(); ++k) {
        power = power * n;
        power *= S(-1);
        if (power.is_zero()) break;
        out += power;
    }
    return out;
}

// Stable text form: one line per word, "letters : value", shortlex order.
template <typename S>
void serialize(const TensorSeries<S>& series, std::ostream& os) {
    for (const auto& [w, c] : series.coefficients())
        os << word_to_string(w) << " : " << scalar_to_string(c) << "\n";
}

template <typename S>
std::string serialize(const TensorSeries<S>& series) {
    std::ostringstream os;
    serialize(series, os);
    return os.str();
}

}  // namespace chenflow
