#pragma once

#include <map>
#include <string>
#include <vector>

#include "chenflow/rational.hpp"

namespace chenflow {

// Multivariate polynomial in x_1..x_n, coefficients of type S, stored as a
// map from exponent vectors.
template <typename S>
class Polynomial {
public:
    using monomial = std::vector<unsigned>;  // exponent of each variable
    using coeff_map = std::map<monomial, S>;

    explicit Polynomial(int variables = 0) : variables_(variables) {}

    static Polynomial constant(int variables, S value) {
        Polynomial out(variables);
        out.add_term(monomial(variables, 0), std::move(value));
        return out;
    }

    static Polynomial variable(int variables, int index_one_based) {
        Polynomial out(variables);
        monomial m(variables, 0);
        m.at(index_one_based - 1) = 1;
        out.add_term(std::move(m), S(1));
        return out;
    }

    int variables() const { return variables_; }
    const coeff_map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(monomial m, S value) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (!scalar_traits<S>::is_zero(value)) terms_.emplace(std::move(m), std::move(value));
        } else {
            it->second += value;
            if (scalar_traits<S>::is_zero(it->second)) terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& other) {
        for (const auto& [m, c] : other.terms_) add_term(m, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& other) {
        for (const auto& [m, c] : other.terms_) add_term(m, S(0) - c);
        return *this;
    }
    Polynomial& operator*=(const S& s) {
        if (scalar_traits<S>::is_zero(s)) {
            terms_.clear();
        } else {
            for (auto& [m, c] : terms_) c *= s;
        }
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const S& s) { return a *= s; }
    friend Polynomial operator*(const S& s, Polynomial a) { return a *= s; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial out(a.variables_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                monomial m = ma;
                for (std::size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
                out.add_term(std::move(m), ca * cb);
            }
        return out;
    }

    bool operator==(const Polynomial& other) const {
        return variables_ == other.variables_ && terms_ == other.terms_;
    }

    Polynomial derivative(int index_one_based) const {
        Polynomial out(variables_);
        for (const auto& [m, c] : terms_) {
            const unsigned p = m[index_one_based - 1];
            if (p == 0) continue;
            monomial dm = m;
            dm[index_one_based - 1] = p - 1;
            out.add_term(std::move(dm), c * S(static_cast<long long>(p)));
        }
        return out;
    }

    S evaluate(const std::vector<S>& point) const {
        S out(0);
        for (const auto& [m, c] : terms_) {
            S term = c;
            for (std::size_t i = 0; i < m.size(); ++i)
                for (unsigned p = 0; p < m[i]; ++p) term *= point[i];
            out += term;
        }
        return out;
    }

    double evaluate_at(const std::vector<double>& point) const {
        double out = 0;
        for (const auto& [m, c] : terms_) {
            double term = scalar_to_double(c);
            for (std::size_t i = 0; i < m.size(); ++i)
                for (unsigned p = 0; p < m[i]; ++p) term *= point[i];
            out += term;
        }
        return out;
    }

private:
    int variables_;
    coeff_map terms_;
};

// Parses expressions like "-3/2*x1^2*x2 + x3 - 1" over variables x1..xn.
template <typename S>
Polynomial<S> parse_polynomial(const std::string& text, int variables);

}  // namespace chenflow
