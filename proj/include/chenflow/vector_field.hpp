#pragma once

#include <istream>
#include <string>
#include <vector>

#include "chenflow/polynomial.hpp"
#include "chenflow/word.hpp"

namespace chenflow {

// Vector field on R^n with polynomial components, so Lie brackets are exact.
template <typename S>
struct PolynomialVectorField {
    std::vector<Polynomial<S>> components;

    int dimension() const { return static_cast<int>(components.size()); }
    bool is_zero() const {
        for (const auto& c : components)
            if (!c.is_zero()) return false;
        return true;
    }

    static PolynomialVectorField zero(int n) {
        PolynomialVectorField out;
        out.components.assign(n, Polynomial<S>(n));
        return out;
    }

    static PolynomialVectorField basis(int n, int direction_one_based) {
        PolynomialVectorField out = zero(n);
        out.components[direction_one_based - 1] = Polynomial<S>::constant(n, S(1));
        return out;
    }

    std::vector<S> evaluate(const std::vector<S>& x) const {
        std::vector<S> out;
        out.reserve(components.size());
        for (const auto& c : components) out.push_back(c.evaluate(x));
        return out;
    }

    void evaluate_at(const std::vector<double>& x, std::vector<double>& out) const {
        out.resize(components.size());
        for (std::size_t i = 0; i < components.size(); ++i) out[i] = components[i].evaluate_at(x);
    }

    friend PolynomialVectorField operator+(PolynomialVectorField a,
                                           const PolynomialVectorField& b) {
        for (int i = 0; i < a.dimension(); ++i) a.components[i] += b.components[i];
        return a;
    }
    friend PolynomialVectorField operator*(PolynomialVectorField a, const S& s) {
        for (auto& c : a.components) c *= s;
        return a;
    }

    bool operator==(const PolynomialVectorField& other) const {
        return components == other.components;
    }
};

// [V,W]_i = sum_j (v_j dw_i/dx_j - w_j dv_i/dx_j), exact.
template <typename S>
PolynomialVectorField<S> poly_lie_bracket(const PolynomialVectorField<S>& v,
                                          const PolynomialVectorField<S>& w) {
    if (v.dimension() != w.dimension())
        throw config_error("lie bracket needs fields of equal dimension");
    const int n = v.dimension();
    PolynomialVectorField<S> out = PolynomialVectorField<S>::zero(n);
    for (int i = 0; i < n; ++i) {
        Polynomial<S> acc(n);
        for (int j = 1; j <= n; ++j) {
            acc += v.components[j - 1] * w.components[i].derivative(j);
            acc -= w.components[j - 1] * v.components[i].derivative(j);
        }
        out.components[i] = std::move(acc);
    }
    return out;
}

// Stratonovich system dX = V_0 dt + sum_i V_i o dB^i starting at x0.
template <typename S>
struct DrivenSystem {
    std::vector<PolynomialVectorField<S>> fields;  // V_0, V_1, ..., V_d
    std::vector<S> x0;

    int state_dimension() const { return static_cast<int>(x0.size()); }
    int noise_dimension() const { return static_cast<int>(fields.size()) - 1; }

    void validate() const {
        if (fields.empty()) throw config_error("system needs at least the drift field V_0");
        for (const auto& f : fields)
            if (f.dimension() != state_dimension())
                throw config_error("all fields must share the state dimension");
    }
};

// Right-nested bracket V_I of the system's fields.
template <typename S>
PolynomialVectorField<S> nested_field_bracket(const DrivenSystem<S>& system, const Word& word) {
    if (word.empty()) throw domain_error("nested_field_bracket needs |I| >= 1");
    if (word_length(word) > 6) throw cost_error("nested_field_bracket guarded at |I| <= 6");
    validate_word(word, system.noise_dimension());
    PolynomialVectorField<S> out = system.fields[word.back()];
    for (int pos = word_length(word) - 2; pos >= 0; --pos)
        out = poly_lie_bracket(system.fields[word[pos]], out);
    return out;
}

// System file format:
//   n: 2
//   d: 2
//   x0: 1/2; 3/10
//   V0: 0; 0
//   V1: 1; 0
//   V2: -x2; x1
template <typename S>
DrivenSystem<S> parse_system(std::istream& in);

DrivenSystem<double> to_double_system(const DrivenSystem<Rat>& system);

}  // namespace chenflow
