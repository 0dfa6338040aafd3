#pragma once

#include <map>
#include <memory>
#include <vector>

#include "chenflow/tensor_series.hpp"
#include "chenflow/word.hpp"

namespace chenflow {

// Flat indexing of all words with degree <= max_degree plus precomputed
// concatenation splits.  Backs the dense double-precision engine used in the
// Monte Carlo hot paths; the map-based TensorSeries stays authoritative.
class WordTable {
public:
    struct Split {
        int left;
        int right;
        int out;
    };

    WordTable(int alphabet, int max_degree, Grading grading);

    int alphabet() const { return alphabet_; }
    int max_degree() const { return max_degree_; }
    Grading grading() const { return grading_; }
    int size() const { return static_cast<int>(words_.size()); }
    const std::vector<Word>& words() const { return words_; }
    const Word& word(int idx) const { return words_[idx]; }
    int index(const Word& w) const;

    const std::vector<Split>& splits() const { return splits_; }
    // For each nonempty word: index of the word without its last letter,
    // and that last letter.
    const std::vector<std::pair<int, int>>& parents() const { return parents_; }

private:
    int alphabet_;
    int max_degree_;
    Grading grading_;
    std::vector<Word> words_;
    std::map<Word, int, ShortLex> index_;
    std::vector<Split> splits_;
    std::vector<std::pair<int, int>> parents_;
};

// Coefficient vector aligned with a WordTable.
using DenseSeries = std::vector<double>;

DenseSeries dense_unit(const WordTable& table);

void dense_mul(const WordTable& table, const DenseSeries& a, const DenseSeries& b,
               DenseSeries& out);

// Signature of one affine segment with increment coordinates
// (dt, dx^1, ..., dx^d): coefficient of a word is the product of its letter
// increments divided by k!.
void dense_segment_signature(const WordTable& table, double dt, const double* increments,
                             DenseSeries& out);

// Multiplies the running signature by one segment signature in place.
void dense_push_segment(const WordTable& table, DenseSeries& sig, double dt,
                        const double* increments, DenseSeries& scratch_segment,
                        DenseSeries& scratch_product);

TensorSeries<double> to_series(const WordTable& table, const DenseSeries& dense);

}  // namespace chenflow
