#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quasispec/word.hpp"

namespace qs {

// Suffix automaton over a word; recognizes exactly the factors of the word.
// Build is O(|w| * sigma); distinct-factor counting is O(states).
class FactorIndex {
  public:
    explicit FactorIndex(const Word& w);

    // p(n) = number of distinct length-n factors, for n = 1..n_max.
    [[nodiscard]] std::vector<std::int64_t>
    complexity(std::size_t n_max) const;

    // All distinct length-n factors, lexicographically sorted.
    [[nodiscard]] std::vector<std::string> factors(std::size_t n) const;

    [[nodiscard]] bool contains(const std::string& f) const;
    [[nodiscard]] std::size_t state_count() const { return len_.size(); }

  private:
    Alphabet alphabet_;
    std::vector<std::int32_t> len_, link_;
    std::vector<std::int32_t> next_; // state_count x sigma transition table
    std::int32_t last_ = 0;

    std::int32_t transition(std::int32_t s, std::size_t ci) const;
    std::int32_t add_state(std::int32_t len);
    void extend(std::size_t ci);
};

// Factor complexity p(n) for n = 1..n_max (p(n) <= |w| - n + 1 always).
std::vector<std::int64_t> complexity(const Word& w, std::size_t n_max);

// Distinct length-n factors of w; empty (not an error) for n > |w|.
std::vector<std::string> factor_set(const Word& w, std::size_t n);

// Occurrences of v in w may overlap: frequency = #occ / (|w| - |v| + 1).
// Requires |v| <= |w|.
std::int64_t occurrence_count(const Word& w, const Word& v);
double frequency(const Word& w, const Word& v);

struct PowerHit {
    std::size_t position; // 1-based start of the k-th power
    std::string base;     // the repeated block v
};

// All positions (1-based) where some v^k with |v| = len sits in w.
// O(|w|) per call via a sliding periodicity window.
std::vector<PowerHit> find_powers(const Word& w, std::size_t k,
                                  std::size_t len);

// 1-based positions of length-n palindromic factors.
std::vector<std::size_t> find_palindromes(const Word& w, std::size_t n);

} // namespace qs
