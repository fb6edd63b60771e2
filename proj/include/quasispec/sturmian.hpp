#pragma once

#include <cstdint>
#include <string>

#include "quasispec/contfrac.hpp"
#include "quasispec/word.hpp"

namespace qs {

// Alphabet used by all Sturmian/circle-map words.
const Alphabet& binary01();

// Standard block s_n over {0,1}: s_{-1} = "1", s_0 = "0",
// s_1 = s_0^{a_1 - 1} s_{-1}, and s_n = s_{n-1}^{a_n} s_{n-2} for n >= 2.
// |s_n| = q_n. n ranges over -1, 0, ..., cf.depth(). Throws domain_error if
// the requested level exceeds the expanded depth, resolution_error if the
// block would exceed max_chars (default 64 MB).
Word sturmian_block(const ContinuedFraction& cf, std::int64_t n,
                    std::size_t max_chars = std::size_t(1) << 26);

// Exact check of the concatenation identity
//   s_n s_{n+1} == s_{n+1} s_{n-1}^{a_n - 1} s_{n-2} s_{n-1}   (n >= 2).
// Decides exactly for any size: small levels by byte comparison, large
// levels by comparing exact block decompositions (falling back to a lazy
// character stream on mismatch).
bool check_block_identity(const ContinuedFraction& cf, std::int64_t n);

// Length of s_n as the structural sum over its expansion (counts of the two
// base blocks times their materialized lengths). Usable far beyond the
// materialization cap. Throws resolution_error on 64-bit overflow.
std::int64_t sturmian_block_length(const ContinuedFraction& cf,
                                   std::int64_t n);

// Circle-map coding word v(n) = chi_[1-beta,1)(n*alpha + theta mod 1) for
// n = from..to (inclusive), as a word over {0,1}. Requires 0 < beta < 1.
Word circle_map_word(double alpha, double beta, double theta,
                     std::int64_t from, std::int64_t to);

// Single circle-map symbol at site n.
int circle_map_symbol(double alpha, double beta, double theta, std::int64_t n);

} // namespace qs
