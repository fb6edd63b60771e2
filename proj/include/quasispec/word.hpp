#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "quasispec/errors.hpp"

namespace qs {

// Finite ordered alphabet, 2..8 distinct symbols. Symbols are single chars.
class Alphabet {
  public:
    Alphabet() = default;
    explicit Alphabet(std::string symbols);

    [[nodiscard]] std::size_t size() const { return symbols_.size(); }
    [[nodiscard]] const std::string& symbols() const { return symbols_; }
    [[nodiscard]] bool contains(char c) const;
    // Index of a symbol in alphabet order; throws if absent.
    [[nodiscard]] std::size_t index(char c) const;

    bool operator==(const Alphabet& o) const { return symbols_ == o.symbols_; }

  private:
    std::string symbols_;
};

// A finite word over an alphabet. Internally 0-based; operations whose
// results are documented as 1-based say so at their declaration.
class Word {
  public:
    Word() = default;
    Word(Alphabet alphabet, std::string letters);

    [[nodiscard]] std::size_t size() const { return letters_.size(); }
    [[nodiscard]] bool empty() const { return letters_.empty(); }
    [[nodiscard]] char at(std::size_t i) const { return letters_.at(i); }
    [[nodiscard]] const std::string& letters() const { return letters_; }
    [[nodiscard]] const Alphabet& alphabet() const { return alphabet_; }
    [[nodiscard]] Word prefix(std::size_t n) const;

    bool operator==(const Word& o) const { return letters_ == o.letters_; }

  private:
    Alphabet alphabet_;
    std::string letters_;
};

// Primitive substitution rule: one image word per symbol.
struct SubstitutionRule {
    Alphabet alphabet;
    std::map<char, std::string> images;

    // Validates symbol closure (images only use alphabet symbols, every
    // symbol has an image) and primitivity (some power of the incidence
    // matrix is strictly positive).
    static SubstitutionRule make(Alphabet alphabet,
                                 std::map<char, std::string> images);

    [[nodiscard]] const std::string& image(char c) const;
};

// Built-in rules: "fibonacci", "period-doubling", "binary-non-pisot",
// "thue-morse", "rudin-shapiro".
SubstitutionRule builtin_substitution(const std::string& name);
std::vector<std::string> builtin_substitution_names();

// Applies a substitution symbol by symbol.
Word apply_substitution(const SubstitutionRule& rule, const Word& w);

// Prefix of the one-sided fixed point obtained by iterating the rule on
// `seed` until the word reaches min_length. Requires image(seed) to start
// with seed and the iteration to grow.
Word fixed_point_prefix(const SubstitutionRule& rule, char seed,
                        std::size_t min_length);

} // namespace qs
