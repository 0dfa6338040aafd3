#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chenflow/rational.hpp"

namespace chenflow {

// Dense square matrix over an arbitrary scalar; sized for operators on the
// 2^d-dimensional exterior algebra (d <= 6).
template <typename S>
class Mat {
public:
    Mat() : n_(0) {}
    explicit Mat(int n) : n_(n), data_(static_cast<std::size_t>(n) * n, S(0)) {}

    static Mat identity(int n) {
        Mat out(n);
        for (int i = 0; i < n; ++i) out(i, i) = S(1);
        return out;
    }

    int size() const { return n_; }
    S& operator()(int row, int col) { return data_[static_cast<std::size_t>(row) * n_ + col]; }
    const S& operator()(int row, int col) const {
        return data_[static_cast<std::size_t>(row) * n_ + col];
    }

    Mat& operator+=(const Mat& o) {
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    Mat& operator*=(const S& s) {
        for (auto& v : data_) v *= s;
        return *this;
    }
    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator*(Mat a, const S& s) { return a *= s; }
    friend Mat operator*(const S& s, Mat a) { return a *= s; }

    friend Mat operator*(const Mat& a, const Mat& b) {
        Mat out(a.n_);
        for (int i = 0; i < a.n_; ++i)
            for (int k = 0; k < a.n_; ++k) {
                const S& aik = a(i, k);
                if (scalar_traits<S>::is_zero(aik)) continue;
                for (int j = 0; j < a.n_; ++j) out(i, j) += aik * b(k, j);
            }
        return out;
    }

    bool operator==(const Mat& o) const { return n_ == o.n_ && data_ == o.data_; }

    bool is_zero() const {
        for (const auto& v : data_)
            if (!scalar_traits<S>::is_zero(v)) return false;
        return true;
    }

private:
    int n_;
    std::vector<S> data_;
};

enum class FermionKind { creation, annihilation };

// Basis of the exterior algebra: subsets of {1..d} as bitmasks, wedge factors
// in increasing order.  Creation a*_i wedges theta_i on the left; its sign on
// e_S is (-1)^{#{j in S : j < i}}.  Annihilation is the adjoint.
namespace fermion {

inline int sign_below(std::uint32_t mask, int i) {
    const std::uint32_t below = mask & ((1u << (i - 1)) - 1u);
    return __builtin_popcount(below) % 2 == 0 ? 1 : -1;
}

// e_T under a*_i or a_i: target subset and sign, or nullopt if annihilated.
inline std::optional<std::pair<std::uint32_t, int>> apply(FermionKind kind, int i,
                                                          std::uint32_t t) {
    const std::uint32_t bit = 1u << (i - 1);
    if (kind == FermionKind::creation) {
        if (t & bit) return std::nullopt;
        return std::make_pair(t | bit, sign_below(t, i));
    }
    if (!(t & bit)) return std::nullopt;
    return std::make_pair(t & ~bit, sign_below(t & ~bit, i));
}

// Applies A_IJ = a*_{i1}...a*_{ik} a_{j1}...a_{jl} (indices increasing within
// each group, rightmost operator first) to e_T.
inline std::optional<std::pair<std::uint32_t, int>> apply_pair_word(std::uint32_t i_mask,
                                                                    std::uint32_t j_mask,
                                                                    std::uint32_t t, int d) {
    std::uint32_t cur = t;
    int sign = 1;
    for (int j = d; j >= 1; --j) {
        if (!(j_mask & (1u << (j - 1)))) continue;
        auto step = apply(FermionKind::annihilation, j, cur);
        if (!step) return std::nullopt;
        cur = step->first;
        sign *= step->second;
    }
    for (int i = d; i >= 1; --i) {
        if (!(i_mask & (1u << (i - 1)))) continue;
        auto step = apply(FermionKind::creation, i, cur);
        if (!step) return std::nullopt;
        cur = step->first;
        sign *= step->second;
    }
    return std::make_pair(cur, sign);
}

}  // namespace fermion

template <typename S>
Mat<S> fermion_matrix(FermionKind kind, int i, int d) {
    if (i < 1 || i > d) throw domain_error("fermion index out of range");
    const int n = 1 << d;
    Mat<S> out(n);
    for (std::uint32_t t = 0; t < static_cast<std::uint32_t>(n); ++t) {
        auto step = fermion::apply(kind, i, t);
        if (step) out(static_cast<int>(step->first), static_cast<int>(t)) = S(step->second);
    }
    return out;
}

template <typename S>
Mat<S> pair_basis_matrix(std::uint32_t i_mask, std::uint32_t j_mask, int d) {
    const int n = 1 << d;
    Mat<S> out(n);
    for (std::uint32_t t = 0; t < static_cast<std::uint32_t>(n); ++t) {
        auto step = fermion::apply_pair_word(i_mask, j_mask, t, d);
        if (step) out(static_cast<int>(step->first), static_cast<int>(t)) = S(step->second);
    }
    return out;
}

// Trace on even forms minus trace on odd forms.
template <typename S>
S supertrace(const Mat<S>& m) {
    S out(0);
    for (int t = 0; t < m.size(); ++t) {
        if (__builtin_popcount(static_cast<unsigned>(t)) % 2 == 0)
            out += m(t, t);
        else
            out -= m(t, t);
    }
    return out;
}

// Coefficients of an operator in the basis a*_I a_J, keyed by the two subset
// masks.  The basis matrices decouple into small triangular blocks indexed by
// the net created/annihilated letters, which the solver walks directly.
template <typename S>
using WordPairCoefficients = std::map<std::pair<std::uint32_t, std::uint32_t>, S>;

template <typename S>
WordPairCoefficients<S> expand_in_pair_basis(const Mat<S>& m, int d) {
    if (d > 6) throw cost_error("pair-basis expansion guarded at d <= 6");
    if (m.size() != (1 << d)) throw config_error("operator size must be 2^d");
    WordPairCoefficients<S> out;
    const std::uint32_t full = (1u << d) - 1u;
    // Net effect classes: C = letters annihilated, D = letters created.
    for (std::uint32_t c = 0; c <= full; ++c) {
        for (std::uint32_t dmask = 0; dmask <= full; ++dmask) {
            if (c & dmask) continue;
            const std::uint32_t e_mask = full & ~(c | dmask);
            // Subsets of e_mask in increasing popcount order.
            std::vector<std::uint32_t> subsets;
            for (std::uint32_t k = 0;; k = (k - e_mask) & e_mask) {
                subsets.push_back(k);
                if (k == e_mask) break;
            }
            std::stable_sort(subsets.begin(), subsets.end(),
                             [](std::uint32_t a, std::uint32_t b) {
                                 return __builtin_popcount(a) < __builtin_popcount(b);
                             });
            std::map<std::uint32_t, S> block;  // P -> c_{D u P, C u P}
            for (std::uint32_t k : subsets) {
                const std::uint32_t row = k | dmask;
                const std::uint32_t col = k | c;
                S rhs = m(static_cast<int>(row), static_cast<int>(col));
                S diag_sign(0);
                for (std::uint32_t p = k;; p = (p - 1) & k) {
                    auto step = fermion::apply_pair_word(dmask | p, c | p, col, d);
                    if (step && step->first == row) {
                        if (p == k)
                            diag_sign = S(step->second);
                        else if (auto it = block.find(p); it != block.end())
                            rhs -= S(step->second) * it->second;
                    }
                    if (p == 0) break;
                }
                // The diagonal entry is always +-1.
                S value = rhs * diag_sign;
                if (!scalar_traits<S>::is_zero(value)) block[k] = value;
            }
            for (const auto& [p, value] : block) out[{dmask | p, c | p}] = value;
        }
    }
    return out;
}

// Str(A) = (-1)^{d(d-1)/2} c_{{1..d},{1..d}}; guarded to even d.
template <typename S>
S supertrace_via_pair_basis(const Mat<S>& m, int d) {
    if (d % 2 != 0) throw domain_error("supertrace coefficient formula requires even d");
    WordPairCoefficients<S> coeffs = expand_in_pair_basis(m, d);
    const std::uint32_t full = (1u << d) - 1u;
    auto it = coeffs.find({full, full});
    S top = it == coeffs.end() ? S(0) : it->second;
    return (d * (d - 1) / 2) % 2 == 0 ? top : S(0) - top;
}

// R_ijkl = <R(e_j,e_k)e_l, e_i> with the standard algebraic curvature
// symmetries; the constructor names the first one that fails.
template <typename S>
class CurvatureTensor {
public:
    CurvatureTensor(int d, std::vector<S> entries) : d_(d), r_(std::move(entries)) {
        if (d_ < 1 || r_.size() != static_cast<std::size_t>(d_ * d_ * d_ * d_))
            throw config_error("curvature tensor needs d^4 entries");
        validate();
    }

    static CurvatureTensor zero(int d) {
        return CurvatureTensor(d, std::vector<S>(d * d * d * d, S(0)));
    }

    // R(X,Y)Z = kappa (<Y,Z> X - <X,Z> Y).
    static CurvatureTensor constant_curvature(int d, const S& kappa) {
        std::vector<S> entries(d * d * d * d, S(0));
        for (int i = 1; i <= d; ++i)
            for (int j = 1; j <= d; ++j)
                for (int k = 1; k <= d; ++k)
                    for (int l = 1; l <= d; ++l) {
                        S value = S(0);
                        if (k == l && i == j) value += kappa;
                        if (j == l && k == i) value -= kappa;
                        entries[idx(d, i, j, k, l)] = value;
                    }
        return CurvatureTensor(d, std::move(entries));
    }

    // Kulkarni-Nomizu square of a symmetric bilinear form; spans valid
    // curvature tensors and keeps every symmetry exactly.
    static CurvatureTensor from_symmetric_square(const std::vector<std::vector<S>>& h) {
        const int d = static_cast<int>(h.size());
        std::vector<S> entries(d * d * d * d, S(0));
        auto t4 = [&](int a, int b, int c, int e) {
            return S(2) * (h[a - 1][c - 1] * h[b - 1][e - 1] - h[a - 1][e - 1] * h[b - 1][c - 1]);
        };
        for (int i = 1; i <= d; ++i)
            for (int j = 1; j <= d; ++j)
                for (int k = 1; k <= d; ++k)
                    for (int l = 1; l <= d; ++l)
                        entries[idx(d, i, j, k, l)] = t4(j, k, l, i);
        return CurvatureTensor(d, std::move(entries));
    }

    int dimension() const { return d_; }
    const S& at(int i, int j, int k, int l) const { return r_[idx(d_, i, j, k, l)]; }
    // Accessor in slot order <R(e_a,e_b)e_c, e_e>: the order used by the
    // Euler-form permutation sum.
    const S& pair_slots(int a, int b, int c, int e) const { return at(e, a, b, c); }

    friend CurvatureTensor operator+(const CurvatureTensor& a, const CurvatureTensor& b) {
        if (a.d_ != b.d_) throw config_error("curvature dimensions differ");
        std::vector<S> entries(a.r_.size());
        for (std::size_t i = 0; i < entries.size(); ++i) entries[i] = a.r_[i] + b.r_[i];
        return CurvatureTensor(a.d_, std::move(entries));
    }

private:
    static std::size_t idx(int d, int i, int j, int k, int l) {
        return (((static_cast<std::size_t>(i - 1) * d + (j - 1)) * d + (k - 1)) * d + (l - 1));
    }

    void validate() const {
        for (int i = 1; i <= d_; ++i)
            for (int j = 1; j <= d_; ++j)
                for (int k = 1; k <= d_; ++k)
                    for (int l = 1; l <= d_; ++l) {
                        if (!(at(i, j, k, l) == S(0) - at(i, k, j, l)))
                            throw domain_error("curvature violates antisymmetry in (j,k)");
                        if (!(at(i, j, k, l) == S(0) - at(l, j, k, i)))
                            throw domain_error("curvature violates antisymmetry in (i,l)");
                        if (!(at(i, j, k, l) == at(k, l, i, j)))
                            throw domain_error("curvature violates pair-exchange symmetry");
                        if (!(at(i, j, k, l) + at(i, k, l, j) + at(i, l, j, k) == S(0)))
                            throw domain_error("curvature violates the first Bianchi identity");
                    }
    }

    int d_;
    std::vector<S> r_;
};

// F = - sum_ijkl R_ijkl a*_i a_j a*_k a_l on the 2^d exterior algebra.
template <typename S>
Mat<S> curvature_endomorphism(const CurvatureTensor<S>& r) {
    const int d = r.dimension();
    const int n = 1 << d;
    Mat<S> out(n);
    for (std::uint32_t t = 0; t < static_cast<std::uint32_t>(n); ++t) {
        for (int l = 1; l <= d; ++l) {
            auto s1 = fermion::apply(FermionKind::annihilation, l, t);
            if (!s1) continue;
            for (int k = 1; k <= d; ++k) {
                auto s2 = fermion::apply(FermionKind::creation, k, s1->first);
                if (!s2) continue;
                for (int j = 1; j <= d; ++j) {
                    auto s3 = fermion::apply(FermionKind::annihilation, j, s2->first);
                    if (!s3) continue;
                    const int sign123 = s1->second * s2->second * s3->second;
                    for (int i = 1; i <= d; ++i) {
                        auto s4 = fermion::apply(FermionKind::creation, i, s3->first);
                        if (!s4) continue;
                        out(static_cast<int>(s4->first), static_cast<int>(t)) -=
                            r.at(i, j, k, l) * S(sign123 * s4->second);
                    }
                }
            }
        }
    }
    return out;
}

namespace detail {

// Permutations of {1..d} with their signs.
void permutations_with_sign(int d, std::vector<std::pair<std::vector<int>, int>>& out);

}  // namespace detail

// Euler form written as c(R) * pi^{-d/2}: the permutation double sum over
// non-overlapping index pairs with weight (-1)^{d/2} / (8^{d/2} (d/2)!).
template <typename S>
S euler_form_pi_coeff(const CurvatureTensor<S>& r) {
    const int d = r.dimension();
    if (d % 2 != 0) throw domain_error("euler form requires even dimension");
    std::vector<std::pair<std::vector<int>, int>> perms;
    detail::permutations_with_sign(d, perms);
    S sum(0);
    for (const auto& [sigma, sgn_sigma] : perms)
        for (const auto& [tau, sgn_tau] : perms) {
            S term(sgn_sigma * sgn_tau);
            for (int i = 1; i <= d - 1; i += 2)
                term *= r.pair_slots(sigma[i - 1], sigma[i], tau[i - 1], tau[i]);
            sum += term;
        }
    const int half = d / 2;
    S norm = scalar_ratio<S>(half % 2 == 0 ? 1 : -1, 1);
    norm /= scalar_pow(S(8), half) * scalar_factorial<S>(half);
    return norm * sum;
}

// (-1)^{d/2} / ((d/2)! 4^{d/2}) Str(F^{d/2}) as a coefficient of pi^{-d/2}.
template <typename S>
S chern_supertrace_pi_coeff(const CurvatureTensor<S>& r) {
    const int d = r.dimension();
    if (d % 2 != 0) throw domain_error("supertrace side requires even dimension");
    const int half = d / 2;
    Mat<S> f = curvature_endomorphism(r);
    Mat<S> power = Mat<S>::identity(1 << d);
    for (int k = 0; k < half; ++k) power = power * f;
    S value = supertrace(power);
    S norm = scalar_ratio<S>(half % 2 == 0 ? 1 : -1, 1);
    norm /= scalar_pow(S(4), half) * scalar_factorial<S>(half);
    return norm * value;
}

struct ChernIdentity {
    double supertrace_side;
    double euler_side;
    double discrepancy;
};

ChernIdentity local_chern_identity_check(const CurvatureTensor<double>& r);

// Curvature input file: lines "i j k l value".
template <typename S>
CurvatureTensor<S> parse_curvature(std::istream& in, int dimension);

enum class ModelSpace { sphere_d2, sphere_d4, flat_torus_d2 };

struct GaussBonnetResult {
    int dimension;
    double sectional_curvature;  // kappa in the orthonormal frame
    double omega;                // Euler form density
    double supertrace_side;      // same density from the supertrace route
    double discrepancy;
    double volume_analytic;
    double volume_quadrature;
    double chi;                  // omega * volume
    std::string convention;
};

GaussBonnetResult gauss_bonnet_model(ModelSpace space, double radius = 1.0);

// Gauss curvature of the round 2-sphere chart metric, from Christoffel
// symbols with numerical derivatives.  Used to pin kappa for the models.
double sphere_gauss_curvature_via_christoffels(double radius, double theta);

}  // namespace chenflow
