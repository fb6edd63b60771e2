#include "quasispec/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "quasispec/errors.hpp"

namespace qs {

Coding Coding::scaled(const Alphabet& alphabet, double lambda) {
    Coding c;
    c.lambda = lambda;
    const std::string& sym = alphabet.symbols();
    for (std::size_t k = 0; k < sym.size(); ++k) {
        c.values[sym[k]] = static_cast<double>(k) * lambda;
    }
    return c;
}

double Coding::value(char c) const {
    const auto it = values.find(c);
    if (it == values.end()) {
        throw domain_error(std::string("coding has no value for symbol '") +
                           c + "'");
    }
    return it->second;
}

Potential Potential::from_word(Word w, Coding coding, std::int64_t first_site) {
    if (w.empty()) {
        throw domain_error("potential window needs a nonempty word");
    }
    Potential p;
    p.kind_ = Kind::window;
    p.first_site_ = first_site;
    std::vector<double> vals;
    vals.reserve(w.size());
    for (char c : w.letters()) {
        vals.push_back(coding.value(c));
    }
    p.values_ = std::make_shared<const std::vector<double>>(std::move(vals));
    return p;
}

Potential Potential::circle_map(double alpha, double beta, double theta,
                                double lambda) {
    if (!(beta > 0.0) || !(beta < 1.0)) {
        throw domain_error("circle map needs 0 < beta < 1");
    }
    Potential p;
    p.kind_ = Kind::circle;
    p.alpha_ = alpha;
    p.beta_ = beta;
    p.theta_ = theta;
    p.lambda_ = lambda;
    return p;
}

Potential Potential::constant(double c) {
    Potential p;
    p.kind_ = Kind::constant;
    p.const_ = c;
    return p;
}

double Potential::operator()(std::int64_t n) const {
    switch (kind_) {
    case Kind::window: {
        const std::int64_t i = n - first_site_;
        if (i < 0 || i >= static_cast<std::int64_t>(values_->size())) {
            throw domain_error("potential site " + std::to_string(n) +
                               " outside the realized window");
        }
        return (*values_)[static_cast<std::size_t>(i)];
    }
    case Kind::circle:
        return lambda_ *
               circle_map_symbol(alpha_, beta_, theta_, n);
    case Kind::constant:
        return const_;
    }
    return const_; // unreachable
}

bool Potential::defined(std::int64_t n) const {
    if (kind_ != Kind::window) {
        return true;
    }
    const std::int64_t i = n - first_site_;
    return i >= 0 && i < static_cast<std::int64_t>(values_->size());
}

bool Potential::covers(std::int64_t lo, std::int64_t hi) const {
    if (lo > hi) {
        return true;
    }
    return defined(lo) && defined(hi);
}

double Potential::min_value() const {
    switch (kind_) {
    case Kind::window:
        return *std::min_element(values_->begin(), values_->end());
    case Kind::circle:
        // the indicator takes both values on any orbit of an irrational
        // rotation; for rational alpha this is still the right envelope
        return std::min(0.0, lambda_);
    case Kind::constant:
        return const_;
    }
    return const_;
}

double Potential::max_value() const {
    switch (kind_) {
    case Kind::window:
        return *std::max_element(values_->begin(), values_->end());
    case Kind::circle:
        return std::max(0.0, lambda_);
    case Kind::constant:
        return const_;
    }
    return const_;
}

} // namespace qs
