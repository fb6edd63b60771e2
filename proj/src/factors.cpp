#include "quasispec/factors.hpp"

#include <algorithm>
#include <functional>

namespace qs {

std::int32_t FactorIndex::transition(std::int32_t s, std::size_t ci) const {
    return next_[static_cast<std::size_t>(s) * alphabet_.size() + ci];
}

std::int32_t FactorIndex::add_state(std::int32_t len) {
    len_.push_back(len);
    link_.push_back(-1);
    next_.insert(next_.end(), alphabet_.size(), -1);
    return static_cast<std::int32_t>(len_.size()) - 1;
}

void FactorIndex::extend(std::size_t ci) {
    const std::size_t sigma = alphabet_.size();
    const std::int32_t cur = add_state(len_[last_] + 1);
    std::int32_t p = last_;
    while (p != -1 && next_[p * sigma + ci] == -1) {
        next_[p * sigma + ci] = cur;
        p = link_[p];
    }
    if (p == -1) {
        link_[cur] = 0;
    } else {
        const std::int32_t q = next_[p * sigma + ci];
        if (len_[p] + 1 == len_[q]) {
            link_[cur] = q;
        } else {
            const std::int32_t clone = add_state(len_[p] + 1);
            for (std::size_t c = 0; c < sigma; ++c)
                next_[static_cast<std::size_t>(clone) * sigma + c] =
                    next_[static_cast<std::size_t>(q) * sigma + c];
            link_[clone] = link_[q];
            while (p != -1 && next_[p * sigma + ci] == q) {
                next_[p * sigma + ci] = clone;
                p = link_[p];
            }
            link_[q] = clone;
            link_[cur] = clone;
        }
    }
    last_ = cur;
}

FactorIndex::FactorIndex(const Word& w) : alphabet_(w.alphabet()) {
    if (w.empty())
        throw domain_error("cannot index an empty word");
    len_.reserve(2 * w.size());
    link_.reserve(2 * w.size());
    next_.reserve(2 * w.size() * alphabet_.size());
    add_state(0);
    for (char c : w.letters())
        extend(alphabet_.index(c));
}

std::vector<std::int64_t>
FactorIndex::complexity(std::size_t n_max) const {
    if (n_max == 0)
        throw domain_error("n_max must be >= 1");
    // State s recognizes one factor of every length in
    // (len(link(s)), len(s)]; accumulate with a difference array.
    std::vector<std::int64_t> diff(n_max + 2, 0);
    for (std::size_t s = 1; s < len_.size(); ++s) {
        const std::int64_t lo = len_[link_[s]] + 1;
        const std::int64_t hi = len_[s];
        if (lo > static_cast<std::int64_t>(n_max))
            continue;
        diff[static_cast<std::size_t>(lo)] += 1;
        const auto cap = std::min<std::int64_t>(
            hi, static_cast<std::int64_t>(n_max));
        diff[static_cast<std::size_t>(cap) + 1] -= 1;
    }
    std::vector<std::int64_t> p(n_max);
    std::int64_t run = 0;
    for (std::size_t n = 1; n <= n_max; ++n) {
        run += diff[n];
        p[n - 1] = run;
    }
    return p;
}

std::vector<std::string> FactorIndex::factors(std::size_t n) const {
    if (n == 0)
        throw domain_error("factor length must be >= 1");
    std::vector<std::string> out;
    std::string path;
    const std::size_t sigma = alphabet_.size();
    std::function<void(std::int32_t)> walk = [&](std::int32_t s) {
        if (path.size() == n) {
            out.push_back(path);
            return;
        }
        for (std::size_t c = 0; c < sigma; ++c) {
            const std::int32_t t = transition(s, c);
            if (t == -1)
                continue;
            path.push_back(alphabet_.symbols()[c]);
            walk(t);
            path.pop_back();
        }
    };
    walk(0);
    std::sort(out.begin(), out.end());
    return out;
}

bool FactorIndex::contains(const std::string& f) const {
    std::int32_t s = 0;
    for (char c : f) {
        if (!alphabet_.contains(c))
            return false;
        s = transition(s, alphabet_.index(c));
        if (s == -1)
            return false;
    }
    return true;
}

std::vector<std::int64_t> complexity(const Word& w, std::size_t n_max) {
    if (n_max > w.size())
        throw domain_error("n_max exceeds the word length");
    return FactorIndex(w).complexity(n_max);
}

std::vector<std::string> factor_set(const Word& w, std::size_t n) {
    if (n > w.size())
        return {}; // a word has no factors longer than itself
    return FactorIndex(w).factors(n);
}

std::int64_t occurrence_count(const Word& w, const Word& v) {
    if (v.empty() || v.size() > w.size())
        throw domain_error("pattern must be nonempty and no longer than "
                           "the word");
    std::int64_t count = 0;
    const std::string& hay = w.letters();
    const std::string& pat = v.letters();
    for (std::size_t pos = hay.find(pat); pos != std::string::npos;
         pos = hay.find(pat, pos + 1))
        ++count;
    return count;
}

double frequency(const Word& w, const Word& v) {
    const auto windows =
        static_cast<double>(w.size() - v.size() + 1);
    return static_cast<double>(occurrence_count(w, v)) / windows;
}

std::vector<PowerHit> find_powers(const Word& w, std::size_t k,
                                  std::size_t len) {
    if (k < 2)
        throw domain_error("power exponent must be >= 2");
    if (len == 0)
        throw domain_error("base length must be >= 1");
    std::vector<PowerHit> hits;
    if (k * len > w.size())
        return hits;
    const std::string& s = w.letters();
    // eq[i] = 1 iff s[i] == s[i+len]; v^k at i <=> a full (k-1)*len run.
    const std::size_t m = s.size() - len;
    std::vector<std::int32_t> prefix(m + 1, 0);
    for (std::size_t i = 0; i < m; ++i)
        prefix[i + 1] = prefix[i] + (s[i] == s[i + len] ? 1 : 0);
    const std::size_t need = (k - 1) * len;
    for (std::size_t i = 0; i + k * len <= s.size(); ++i) {
        if (prefix[i + need] - prefix[i] ==
            static_cast<std::int32_t>(need))
            hits.push_back({i + 1, s.substr(i, len)});
    }
    return hits;
}

std::vector<std::size_t> find_palindromes(const Word& w, std::size_t n) {
    if (n == 0 || n > w.size())
        throw domain_error("palindrome length out of range");
    std::vector<std::size_t> hits;
    const std::string& s = w.letters();
    for (std::size_t i = 0; i + n <= s.size(); ++i) {
        bool pal = true;
        for (std::size_t j = 0; j < n / 2 && pal; ++j)
            pal = s[i + j] == s[i + n - 1 - j];
        if (pal)
            hits.push_back(i + 1);
    }
    return hits;
}

} // namespace qs
