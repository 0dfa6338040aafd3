#include "chenflow/word.hpp"

#include <algorithm>

namespace chenflow {

std::vector<Word> enumerate_words(int alphabet, int max_degree, Grading grading) {
    std::vector<Word> out;
    std::vector<Word> frontier{Word{}};
    out.push_back(Word{});
    while (!frontier.empty()) {
        std::vector<Word> next;
        for (const Word& w : frontier) {
            for (int letter = 0; letter <= alphabet; ++letter) {
                Word child = w;
                child.push_back(letter);
                if (word_degree(child, grading) > max_degree) continue;
                next.push_back(child);
            }
        }
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    std::sort(out.begin(), out.end(), shortlex_less);
    return out;
}

namespace detail {

std::vector<std::vector<int>> all_permutations(int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> images(k);
    for (int i = 0; i < k; ++i) images[i] = i + 1;
    do {
        out.push_back(images);
    } while (std::next_permutation(images.begin(), images.end()));
    return out;
}

}  // namespace detail

}  // namespace chenflow
