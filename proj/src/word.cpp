#include "quasispec/word.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace qs {

Alphabet::Alphabet(std::string symbols) : symbols_(std::move(symbols)) {
    if (symbols_.size() < 2 || symbols_.size() > 8)
        throw domain_error("alphabet needs 2..8 symbols, got " +
                           std::to_string(symbols_.size()));
    std::set<char> seen(symbols_.begin(), symbols_.end());
    if (seen.size() != symbols_.size())
        throw domain_error("alphabet symbols must be distinct: " + symbols_);
}

bool Alphabet::contains(char c) const {
    return symbols_.find(c) != std::string::npos;
}

std::size_t Alphabet::index(char c) const {
    const auto pos = symbols_.find(c);
    if (pos == std::string::npos)
        throw domain_error(std::string("symbol '") + c +
                           "' not in alphabet " + symbols_);
    return pos;
}

Word::Word(Alphabet alphabet, std::string letters)
    : alphabet_(std::move(alphabet)), letters_(std::move(letters)) {
    for (char c : letters_)
        if (!alphabet_.contains(c))
            throw domain_error(std::string("word uses symbol '") + c +
                               "' outside alphabet " + alphabet_.symbols());
}

Word Word::prefix(std::size_t n) const {
    if (n > letters_.size())
        throw domain_error("prefix length exceeds word length");
    return {alphabet_, letters_.substr(0, n)};
}

SubstitutionRule SubstitutionRule::make(Alphabet alphabet,
                                        std::map<char, std::string> images) {
    for (char c : alphabet.symbols()) {
        auto it = images.find(c);
        if (it == images.end())
            throw domain_error(std::string("no image for symbol '") + c +
                               "'");
        if (it->second.empty())
            throw domain_error(std::string("empty image for symbol '") + c +
                               "'");
        for (char d : it->second)
            if (!alphabet.contains(d))
                throw domain_error(
                    std::string("image of '") + c +
                    "' leaves the alphabet: " + it->second);
    }
    if (images.size() != alphabet.size())
        throw domain_error("images given for symbols outside the alphabet");

    // Primitivity: B^t strictly positive for the incidence matrix B and the
    // Wielandt exponent t = (k-1)^2 + 1, which is conclusive either way.
    const std::size_t k = alphabet.size();
    using BoolMat = std::array<std::array<bool, 8>, 8>;
    BoolMat incidence{};
    for (std::size_t i = 0; i < k; ++i)
        for (char d : images.at(alphabet.symbols()[i]))
            incidence[i][alphabet.index(d)] = true;
    BoolMat power = incidence;
    const std::size_t wielandt = (k - 1) * (k - 1) + 1;
    for (std::size_t step = 1; step < wielandt; ++step) {
        BoolMat next{};
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t l = 0; l < k; ++l)
                if (power[i][l])
                    for (std::size_t j = 0; j < k; ++j)
                        next[i][j] = next[i][j] || incidence[l][j];
        power = next;
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (!power[i][j])
                throw domain_error("substitution is not primitive");

    SubstitutionRule rule;
    rule.alphabet = std::move(alphabet);
    rule.images = std::move(images);
    return rule;
}

const std::string& SubstitutionRule::image(char c) const {
    auto it = images.find(c);
    if (it == images.end())
        throw domain_error(std::string("no image for symbol '") + c + "'");
    return it->second;
}

SubstitutionRule builtin_substitution(const std::string& name) {
    if (name == "fibonacci")
        return SubstitutionRule::make(Alphabet("ab"),
                                      {{'a', "ab"}, {'b', "a"}});
    if (name == "period-doubling")
        return SubstitutionRule::make(Alphabet("ab"),
                                      {{'a', "ab"}, {'b', "aa"}});
    if (name == "binary-non-pisot")
        return SubstitutionRule::make(Alphabet("ab"),
                                      {{'a', "ab"}, {'b', "aaa"}});
    if (name == "thue-morse")
        return SubstitutionRule::make(Alphabet("ab"),
                                      {{'a', "ab"}, {'b', "ba"}});
    if (name == "rudin-shapiro")
        return SubstitutionRule::make(
            Alphabet("abcd"),
            {{'a', "ab"}, {'b', "ac"}, {'c', "db"}, {'d', "dc"}});
    throw domain_error("unknown substitution: " + name);
}

std::vector<std::string> builtin_substitution_names() {
    return {"fibonacci", "period-doubling", "binary-non-pisot", "thue-morse",
            "rudin-shapiro"};
}

Word apply_substitution(const SubstitutionRule& rule, const Word& w) {
    if (!(rule.alphabet == w.alphabet()))
        throw domain_error("word alphabet does not match the rule");
    std::string out;
    out.reserve(w.size() * 2);
    for (char c : w.letters())
        out += rule.image(c);
    return {rule.alphabet, std::move(out)};
}

Word fixed_point_prefix(const SubstitutionRule& rule, char seed,
                        std::size_t min_length) {
    if (!rule.alphabet.contains(seed))
        throw domain_error("seed symbol not in alphabet");
    const std::string& img = rule.image(seed);
    if (img.empty() || img[0] != seed)
        throw domain_error(std::string("image of '") + seed +
                           "' does not start with it; no one-sided fixed "
                           "point from this seed");
    if (img.size() < 2)
        throw domain_error(std::string("image of '") + seed +
                           "' does not grow; iteration stalls");

    Word w(rule.alphabet, std::string(1, seed));
    while (w.size() < min_length) {
        Word next = apply_substitution(rule, w);
        if (next.size() <= w.size())
            throw domain_error("substitution iteration stopped growing");
        w = std::move(next);
    }
    return w.prefix(std::max<std::size_t>(min_length, 1));
}

} // namespace qs
