#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "quasispec/sturmian.hpp"
#include "quasispec/word.hpp"

namespace qs {

// Symbol -> coupling map. The default coding sends the k-th alphabet symbol
// to k * lambda (so a binary {0,1} or {a,b} word gets values {0, lambda}).
struct Coding {
    std::map<char, double> values;
    double lambda = 1.0;

    static Coding scaled(const Alphabet& alphabet, double lambda);
    [[nodiscard]] double value(char c) const;
};

// Potential V: Z -> R, either a word window realized on consecutive sites or
// the two-sided circle-map formula V(n) = lambda * chi_[1-beta,1)(n alpha +
// theta mod 1).
class Potential {
  public:
    // Word w realized on sites first_site .. first_site + |w| - 1.
    static Potential from_word(Word w, Coding coding,
                               std::int64_t first_site = 1);
    // Defined on all of Z.
    static Potential circle_map(double alpha, double beta, double theta,
                                double lambda);
    // V == c everywhere (c defaults to 0: the free operator).
    static Potential constant(double c = 0.0);

    [[nodiscard]] double operator()(std::int64_t n) const;
    [[nodiscard]] bool defined(std::int64_t n) const;
    // Largest interval of definition clipped to [lo, hi].
    [[nodiscard]] bool covers(std::int64_t lo, std::int64_t hi) const;

    [[nodiscard]] double min_value() const;
    [[nodiscard]] double max_value() const;

  private:
    enum class Kind { window, circle, constant };
    Kind kind_ = Kind::constant;

    // window
    std::shared_ptr<const std::vector<double>> values_;
    std::int64_t first_site_ = 1;

    // circle
    double alpha_ = 0.0, beta_ = 0.0, theta_ = 0.0, lambda_ = 0.0;

    // constant
    double const_ = 0.0;
};

} // namespace qs
