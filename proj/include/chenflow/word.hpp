#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "chenflow/errors.hpp"

namespace chenflow {

// A word is a finite sequence of letters from the alphabet {0, 1, ..., d}.
// Letter 0 plays the role of the time coordinate and counts twice in the
// scaling degree.
using Word = std::vector<int>;

enum class Grading {
    scaling,  // degree = length + number of zero letters
    length,   // degree = length
};

inline int word_length(const Word& w) { return static_cast<int>(w.size()); }

inline int zero_count(const Word& w) {
    return static_cast<int>(std::count(w.begin(), w.end(), 0));
}

inline int scaling_degree(const Word& w) { return word_length(w) + zero_count(w); }

inline int word_degree(const Word& w, Grading grading) {
    return grading == Grading::scaling ? scaling_degree(w) : word_length(w);
}

struct WordDegrees {
    int length;
    int zeros;
    int scaling;
};

inline WordDegrees word_degrees(const Word& w) {
    return {word_length(w), zero_count(w), scaling_degree(w)};
}

inline void validate_word(const Word& w, int alphabet) {
    for (int letter : w)
        if (letter < 0 || letter > alphabet)
            throw domain_error("word letter out of range [0, d]");
}

// Canonical order: shorter words first, then lexicographic.  This fixes the
// iteration order of every series map.
inline bool shortlex_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

struct ShortLex {
    bool operator()(const Word& a, const Word& b) const { return shortlex_less(a, b); }
};

inline Word concat(const Word& a, const Word& b) {
    Word out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

inline std::string word_to_string(const Word& w) {
    if (w.empty()) return "e";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += '.';
        out += std::to_string(w[i]);
    }
    return out;
}

// All words over {0..alphabet} with degree <= max_degree, in shortlex order.
std::vector<Word> enumerate_words(int alphabet, int max_degree, Grading grading);

// True iff the word factors as a concatenation of the blocks (0) and (i,i),
// i >= 1.  Exactly these words carry nonzero expected Brownian iterated
// integrals.
inline bool is_moment_word(const Word& w) {
    std::size_t pos = 0;
    while (pos < w.size()) {
        if (w[pos] == 0) {
            ++pos;
        } else if (pos + 1 < w.size() && w[pos + 1] == w[pos]) {
            pos += 2;
        } else {
            return false;
        }
    }
    return true;
}

// A permutation of {1..k} given by its list of images.
struct Permutation {
    std::vector<int> images;  // images[i] = sigma(i+1), values in 1..k

    explicit Permutation(std::vector<int> im) : images(std::move(im)) { validate(); }

    int size() const { return static_cast<int>(images.size()); }
    int operator()(int i) const { return images[i - 1]; }

    Permutation inverse() const {
        std::vector<int> inv(images.size());
        for (int i = 0; i < size(); ++i) inv[images[i] - 1] = i + 1;
        return Permutation(std::move(inv));
    }

private:
    void validate() const {
        std::vector<bool> seen(images.size(), false);
        for (int v : images) {
            if (v < 1 || v > size() || seen[v - 1])
                throw domain_error("permutation images must be a bijection of {1..k}");
            seen[v - 1] = true;
        }
    }
};

// Number of positions j in {1..k-1} with sigma(j) > sigma(j+1).
inline int descent_count(const Permutation& sigma) {
    int count = 0;
    for (int j = 1; j < sigma.size(); ++j)
        if (sigma(j) > sigma(j + 1)) ++count;
    return count;
}

}  // namespace chenflow
