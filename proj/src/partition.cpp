#include "quasispec/partition.hpp"

#include <algorithm>
#include <string_view>

namespace qs {

namespace {

struct Frame {
    std::size_t pos;
    int choice; // 0: try s_n, 1: try s_{n-1}, 2: try trailing partial
    std::int64_t mult; // open run of s_n blocks ending at pos (0 if none)
};

bool matches_at(std::string_view hay, std::size_t pos,
                std::string_view pat) {
    return pos + pat.size() <= hay.size() &&
           hay.compare(pos, pat.size(), pat) == 0;
}

} // namespace

PartitionView n_partition(const Word& w, const ContinuedFraction& cf,
                          std::int64_t n) {
    if (n < 1)
        throw domain_error("partition level must be >= 1");
    if (static_cast<std::size_t>(n + 1) > cf.depth())
        throw domain_error("partition level needs quotients through a_{n+1};"
                           " expand the continued fraction deeper");
    const Word sn_w = sturmian_block(cf, n);
    const Word sm_w = sturmian_block(cf, n - 1);
    const std::string_view sn = sn_w.letters();
    const std::string_view sm = sm_w.letters();
    const std::string_view s = w.letters();
    if (s.size() < 2 * sn.size())
        throw domain_error("word too short: needs at least two full level-" +
                           std::to_string(n) + " blocks");

    const std::int64_t mult_hi =
        cf.an(static_cast<std::size_t>(n) + 1) + 1;
    const std::int64_t mult_lo = mult_hi - 1;

    // Tile from pos to the end under the run constraints (no adjacent
    // s_{n-1}, interior s_n runs of multiplicity a_{n+1} or a_{n+1}+1):
    // constrained during the search, so the first tiling found is valid.
    // Dead-end memo shared across anchors, keyed by (pos, run context).
    const std::size_t ctx_count =
        2 + 2 * static_cast<std::size_t>(mult_hi);
    std::vector<std::uint8_t> dead((s.size() + 1) * ctx_count, 0);
    std::vector<std::pair<std::size_t, bool>> blocks; // (pos, is_sn)

    const auto context = [&](std::int64_t mult) -> std::size_t {
        // first = current open run started the word (boundary run);
        // interleaves with mult to keep deadness context-exact
        if (mult == 0)
            return blocks.empty() ? 0 : 1;
        const bool first =
            blocks.size() == static_cast<std::size_t>(mult);
        return 2 + 2 * static_cast<std::size_t>(mult - 1) + (first ? 1 : 0);
    };

    auto parse_from = [&](std::size_t start) -> bool {
        blocks.clear();
        std::vector<Frame> stack{{start, 0, 0}};
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.pos == s.size())
                return true; // tiled exactly to the end
            if (dead[f.pos * ctx_count + context(f.mult)])
                f.choice = 3;
            bool descended = false;
            while (f.choice < 3 && !descended) {
                const int c = f.choice++;
                if (c == 0 && f.mult < mult_hi &&
                    matches_at(s, f.pos, sn)) {
                    blocks.emplace_back(f.pos, true);
                    stack.push_back({f.pos + sn.size(), 0, f.mult + 1});
                    descended = true;
                } else if (c == 1 && matches_at(s, f.pos, sm)) {
                    // never two s_{n-1} in a row; a closed interior run
                    // must have reached the lower multiplicity bound
                    const bool after_sm = f.mult == 0 && !blocks.empty();
                    const bool first_run =
                        f.mult > 0 &&
                        blocks.size() == static_cast<std::size_t>(f.mult);
                    const bool short_interior =
                        f.mult > 0 && !first_run && f.mult < mult_lo;
                    if (!after_sm && !short_interior) {
                        blocks.emplace_back(f.pos, false);
                        stack.push_back({f.pos + sm.size(), 0, 0});
                        descended = true;
                    }
                } else if (c == 2) {
                    // trailing fragment: a proper prefix of the next block
                    // (s_{n-1} is a prefix of s_n, so one test covers both)
                    const std::size_t rem = s.size() - f.pos;
                    if (rem < sn.size() &&
                        s.compare(f.pos, rem, sn.substr(0, rem)) == 0)
                        return true;
                }
            }
            if (!descended) {
                dead[f.pos * ctx_count + context(f.mult)] = 1;
                stack.pop_back();
                if (!blocks.empty() && !stack.empty())
                    blocks.pop_back();
            }
        }
        return false;
    };

    // A full block must start within the first q_n + q_{n-1} characters;
    // the smallest working anchor keeps the leading fragment minimal.
    const std::size_t anchor_limit =
        std::min(s.size(), sn.size() + sm.size());

    for (std::size_t t = 0; t <= anchor_limit; ++t) {
        // leading fragment must be the tail of a cut block
        const std::string_view lead = s.substr(0, t);
        const bool lead_ok =
            (t <= sn.size() &&
             sn.compare(sn.size() - t, t, lead) == 0) ||
            (t <= sm.size() && sm.compare(sm.size() - t, t, lead) == 0);
        if (!lead_ok)
            continue;
        if (!parse_from(t))
            continue;

        // collapse into runs and check the multiplicity structure
        std::vector<PartitionRun> runs;
        for (const auto& [pos, is_sn] : blocks) {
            if (!runs.empty() && runs.back().is_sn && is_sn)
                runs.back().multiplicity += 1;
            else
                runs.push_back({is_sn, pos + 1, 1});
        }
        bool ok = true;
        for (std::size_t i = 0; i < runs.size() && ok; ++i) {
            if (!runs[i].is_sn) {
                // isolated: never two s_{n-1} in a row
                if (i + 1 < runs.size() && !runs[i + 1].is_sn)
                    ok = false;
                continue;
            }
            const auto m =
                static_cast<std::int64_t>(runs[i].multiplicity);
            if (m > mult_hi)
                ok = false;
            const bool interior = i > 0 && i + 1 < runs.size();
            if (interior && m < mult_lo)
                ok = false;
        }
        if (!ok)
            continue;

        PartitionView view;
        view.level = n;
        view.interior_start = t + 1;
        std::size_t end = t;
        for (const auto& [pos, is_sn] : blocks)
            end = pos + (is_sn ? sn.size() : sm.size());
        view.interior_end = end;
        view.runs = std::move(runs);
        return view;
    }
    throw consistency_error(
        "word admits no level-" + std::to_string(n) +
        " block partition: not a factor of this rotation sequence");
}

} // namespace qs
