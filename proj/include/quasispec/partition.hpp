#pragma once

#include <cstdint>
#include <vector>

#include "quasispec/contfrac.hpp"
#include "quasispec/sturmian.hpp"
#include "quasispec/word.hpp"

namespace qs {

// One run of identical blocks in a level-n partition.
struct PartitionRun {
    bool is_sn = true;         // true: run of s_n blocks, false: one s_{n-1}
    std::size_t start = 0;     // 1-based position of the run's first char
    std::size_t multiplicity = 0; // number of consecutive blocks in the run
};

// Decomposition of a Sturmian factor into level-n blocks. The tiled interior
// is w[interior_start .. interior_end] (1-based, inclusive); characters
// outside it are boundary fragments of cut blocks.
struct PartitionView {
    std::int64_t level = 0;
    std::size_t interior_start = 1; // 1-based, first tiled char
    std::size_t interior_end = 0;   // 1-based, last tiled char
    std::vector<PartitionRun> runs;

    [[nodiscard]] std::size_t leading_partial() const {
        return interior_start - 1;
    }
};

// Unique tiling of w's interior by s_n and s_{n-1} blocks. Interior runs of
// s_n must have multiplicity a_{n+1} or a_{n+1}+1 and s_{n-1} blocks are
// isolated; violations raise consistency_error (w is then not a factor of
// the Sturmian word for this alpha). Requires room for at least two full
// blocks and cf depth > n.
PartitionView n_partition(const Word& w, const ContinuedFraction& cf,
                          std::int64_t n);

} // namespace qs
