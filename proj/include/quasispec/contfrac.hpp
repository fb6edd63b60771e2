#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quasispec/errors.hpp"

namespace qs {

// Exact description of an irrational rotation number in (0,1).
//
// Accepted forms (see parse_alpha_spec for the CLI grammar):
//   - quadratic irrational (p + q*sqrt(d))/r with integer p, q, r, d,
//     d > 0 not a perfect square, q != 0;
//   - explicit partial quotients, optionally with a repeating tail.
// Rationals are rejected: their expansion terminates and the machinery
// downstream needs infinitely many partial quotients.
struct AlphaSpec {
    enum class Kind { quadratic, quotients };
    Kind kind = Kind::quadratic;

    // quadratic: alpha = (p + q*sqrt(d)) / r
    std::int64_t p = 0, q = 0, r = 1, d = 0;

    // quotients: a_1, a_2, ... = head, then period repeated forever
    // (period empty means the finite list is reused cyclically from head).
    std::vector<std::int64_t> head;
    std::vector<std::int64_t> period;

    [[nodiscard]] double value() const; // numeric alpha in (0,1)
};

// "golden", "silver", "quad:p,q,d,r", "cf:a1,a2,...", "cf:a1,(a2,a3)".
AlphaSpec parse_alpha_spec(const std::string& text);

// Continued fraction data for alpha = [0; a_1, a_2, ...].
struct ContinuedFraction {
    double alpha = 0.0;
    std::vector<std::int64_t> a; // partial quotients a_1..a_depth
    std::vector<std::int64_t> p; // numerators   p_0..p_depth
    std::vector<std::int64_t> q; // denominators q_0..q_depth

    [[nodiscard]] std::size_t depth() const { return a.size(); }
    // a_n, p_n, q_n with the usual indexing (a from 1, p/q from 0).
    [[nodiscard]] std::int64_t an(std::size_t n) const;
    [[nodiscard]] std::int64_t pn(std::size_t n) const;
    [[nodiscard]] std::int64_t qn(std::size_t n) const;
};

// Expands the spec to `depth` partial quotients with exact integer
// arithmetic and accumulates convergents. Throws domain_error for rational
// or out-of-range alpha, resolution_error if a convergent overflows int64.
ContinuedFraction continued_fraction(const AlphaSpec& spec, std::size_t depth);

} // namespace qs
