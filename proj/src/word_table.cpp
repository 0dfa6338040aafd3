#include "chenflow/word_table.hpp"

#include "chenflow/errors.hpp"

namespace chenflow {

WordTable::WordTable(int alphabet, int max_degree, Grading grading)
    : alphabet_(alphabet), max_degree_(max_degree), grading_(grading) {
    words_ = enumerate_words(alphabet, max_degree, grading);
    for (int i = 0; i < static_cast<int>(words_.size()); ++i) index_[words_[i]] = i;
    parents_.resize(words_.size(), {-1, -1});
    for (int i = 0; i < static_cast<int>(words_.size()); ++i) {
        const Word& w = words_[i];
        if (!w.empty()) {
            Word prefix(w.begin(), w.end() - 1);
            parents_[i] = {index_.at(prefix), w.back()};
        }
        for (std::size_t m = 0; m <= w.size(); ++m) {
            Word left(w.begin(), w.begin() + m);
            Word right(w.begin() + m, w.end());
            splits_.push_back({index_.at(left), index_.at(right), i});
        }
    }
}

int WordTable::index(const Word& w) const {
    auto it = index_.find(w);
    if (it == index_.end()) throw config_error("word not in table: " + word_to_string(w));
    return it->second;
}

DenseSeries dense_unit(const WordTable& table) {
    DenseSeries out(table.size(), 0.0);
    out[table.index(Word{})] = 1.0;
    return out;
}

void dense_mul(const WordTable& table, const DenseSeries& a, const DenseSeries& b,
               DenseSeries& out) {
    out.assign(table.size(), 0.0);
    for (const WordTable::Split& s : table.splits()) out[s.out] += a[s.left] * b[s.right];
}

void dense_segment_signature(const WordTable& table, double dt, const double* increments,
                             DenseSeries& out) {
    out.assign(table.size(), 0.0);
    out[0] = 1.0;  // empty word is first in shortlex order
    const auto& parents = table.parents();
    for (int i = 1; i < table.size(); ++i) {
        const auto [prefix, letter] = parents[i];
        const double factor = letter == 0 ? dt : increments[letter - 1];
        out[i] = out[prefix] * factor / static_cast<double>(table.word(i).size());
    }
}

void dense_push_segment(const WordTable& table, DenseSeries& sig, double dt,
                        const double* increments, DenseSeries& scratch_segment,
                        DenseSeries& scratch_product) {
    dense_segment_signature(table, dt, increments, scratch_segment);
    dense_mul(table, sig, scratch_segment, scratch_product);
    sig.swap(scratch_product);
}

TensorSeries<double> to_series(const WordTable& table, const DenseSeries& dense) {
    TensorSeries<double> out(table.alphabet(), table.max_degree(), table.grading());
    for (int i = 0; i < table.size(); ++i) out.set(table.word(i), dense[i]);
    return out;
}

}  // namespace chenflow
