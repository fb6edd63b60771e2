#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quasispec/contfrac.hpp"
#include "quasispec/factors.hpp"
#include "quasispec/mat2.hpp"
#include "quasispec/potential.hpp"
#include "quasispec/word.hpp"

namespace qs {

// V(offset + j) == V(offset + j + n) for all 1 <= j <= n.
bool check_square(const Potential& V, std::int64_t n, std::int64_t offset);

// V(offset + j - n) == V(offset + j) == V(offset + j + n), 1 <= j <= n.
bool check_cube(const Potential& V, std::int64_t n, std::int64_t offset);

struct GordonCertificate {
    std::int64_t n = 0;       // block length in sites
    std::int64_t offset = 0;
    double trace = 0.0;       // tr M_E(n) over the first block
    double bound = 0.0;       // guaranteed lower bound on the attained max
    double attained = 0.0;    // worst (smallest) max over sampled states
    double ch_residual = 0.0; // Cayley-Hamilton residual of the block matrix
    bool ok = false;          // attained >= bound - slack for every state
};

// Two-block bound: for a potential with V(j) = V(j+n) (j = 1..n, after
// rebasing so the square starts at site 1) and |tr M_E(n)| <= C, every unit
// initial state Phi(0) ends with max(||Phi(n)||, ||Phi(2n)||) >= 1/(2C).
// States sampled: e1, e2 and 16 low-discrepancy unit vectors. Throws
// domain_error if the square or the trace precondition fails.
GordonCertificate two_block_bound(double E, const Potential& V,
                                  std::int64_t n, double C);

// Three-block bound: V(j-n) = V(j) = V(j+n) for j = 1..n gives
// max(||Phi(-n)||, ||Phi(n)||, ||Phi(2n)||) >= 1/2 with no trace condition.
GordonCertificate three_block_bound(double E, const Potential& V,
                                    std::int64_t n);

enum class RepeatKind { square, cube };

struct RepeatHit {
    std::int64_t level = 0;  // partition level; block length is q_level
    std::int64_t length = 0; // q_level
    std::int64_t offset = 0; // feed to check_square / check_cube
    RepeatKind kind = RepeatKind::square;
};

// Scans levels 1..n_max of the block partition of w (realized on sites
// 1..|w|) for adjacent equal blocks: runs of multiplicity >= 2 give squares,
// >= 3 give cubes. Offsets are ready for check_square/check_cube.
std::vector<RepeatHit> scan_gordon_scales(const Word& w,
                                          const ContinuedFraction& cf,
                                          std::int64_t n_max);

struct FrequencyBound {
    double value = 0.0; // |v| * frequency(w, v^k)
    bool present = false;
};

// Lower-bound mass |v| * freq(w, v^k); absent powers give value 0 with
// present = false rather than an error.
FrequencyBound frequency_lower_bound(const Word& w, const Word& v,
                                     std::size_t k);

} // namespace qs
