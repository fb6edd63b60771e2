#include "quasispec/contfrac.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace qs {

namespace {

using i64 = std::int64_t;
using i128 = __int128;

i64 isqrt_floor(i64 n) {
    if (n < 0)
        throw domain_error("negative radicand");
    auto r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

i64 floor_div(i128 a, i128 b) {
    i128 quo = a / b, rem = a % b;
    if (rem != 0 && ((rem < 0) != (b < 0)))
        --quo;
    if (quo > std::numeric_limits<i64>::max() ||
        quo < std::numeric_limits<i64>::min())
        throw resolution_error("partial quotient overflow");
    return static_cast<i64>(quo);
}

std::vector<i64> parse_int_list(const std::string& text) {
    std::vector<i64> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            throw domain_error("empty entry in quotient list");
        std::size_t used = 0;
        long long v = std::stoll(item, &used);
        if (used != item.size())
            throw domain_error("bad integer in quotient list: " + item);
        out.push_back(v);
    }
    return out;
}

// Exact partial quotients of (P + sqrt(N)) / Q via the classical surd
// recursion; requires Q | (N - P^2), arranged by the caller.
class SurdExpansion {
  public:
    SurdExpansion(i64 P, i64 N, i64 Q) : p_(P), n_(N), q_(Q) {
        if (q_ == 0)
            throw domain_error("zero denominator in quadratic form");
        s_ = isqrt_floor(N);
        if (s_ * s_ == N)
            throw domain_error(
                "radicand is a perfect square: alpha is rational, and "
                "rational rotation numbers are rejected");
    }

    i64 next_digit() {
        // floor((P + sqrt(N))/Q) with sqrt(N) in (s, s+1) strictly, so the
        // numerator lives in the open interval (P+s, P+s+1).
        const i128 m = static_cast<i128>(p_) + s_;
        i64 a;
        if (q_ > 0)
            a = floor_div(m, q_);
        else
            a = -floor_div(m, -static_cast<i128>(q_)) - 1;
        i128 p2 = static_cast<i128>(a) * q_ - p_;
        if (p2 > std::numeric_limits<i64>::max() ||
            p2 < std::numeric_limits<i64>::min())
            throw resolution_error("surd recursion overflow");
        i64 pn = static_cast<i64>(p2);
        i128 q2 = (static_cast<i128>(n_) - static_cast<i128>(pn) * pn) / q_;
        p_ = pn;
        q_ = static_cast<i64>(q2);
        if (q_ == 0)
            throw domain_error("alpha is rational; expansion terminated");
        return a;
    }

  private:
    i64 p_, n_, q_, s_;
};

} // namespace

double AlphaSpec::value() const {
    if (kind == Kind::quadratic)
        return (static_cast<double>(p) +
                static_cast<double>(q) * std::sqrt(static_cast<double>(d))) /
               static_cast<double>(r);
    // deep convergent of the quotient list
    double num_prev = 1.0, num = 0.0, den_prev = 0.0, den = 1.0;
    for (std::size_t i = 0; i < 64; ++i) {
        i64 a = i < head.size()
                    ? head[i]
                    : (period.empty()
                           ? head[i % head.size()]
                           : period[(i - head.size()) % period.size()]);
        double n2 = a * num + num_prev, d2 = a * den + den_prev;
        num_prev = num;
        den_prev = den;
        num = n2;
        den = d2;
        if (den > 1e12)
            break;
    }
    return num / den;
}

AlphaSpec parse_alpha_spec(const std::string& text) {
    AlphaSpec spec;
    if (text == "golden") {
        spec.kind = AlphaSpec::Kind::quadratic; // (sqrt(5) - 1) / 2
        spec.p = -1;
        spec.q = 1;
        spec.d = 5;
        spec.r = 2;
        return spec;
    }
    if (text == "silver") {
        spec.kind = AlphaSpec::Kind::quadratic; // sqrt(2) - 1
        spec.p = -1;
        spec.q = 1;
        spec.d = 2;
        spec.r = 1;
        return spec;
    }
    if (text.rfind("quad:", 0) == 0) {
        auto parts = parse_int_list(text.substr(5));
        if (parts.size() != 4)
            throw domain_error("quad: wants p,q,d,r");
        spec.kind = AlphaSpec::Kind::quadratic;
        spec.p = parts[0];
        spec.q = parts[1];
        spec.d = parts[2];
        spec.r = parts[3];
        return spec;
    }
    if (text.rfind("cf:", 0) == 0) {
        std::string body = text.substr(3);
        spec.kind = AlphaSpec::Kind::quotients;
        auto open = body.find('(');
        if (open != std::string::npos) {
            if (body.back() != ')')
                throw domain_error("unbalanced parenthesis in cf spec");
            std::string headpart = body.substr(0, open);
            if (!headpart.empty() && headpart.back() == ',')
                headpart.pop_back();
            if (!headpart.empty())
                spec.head = parse_int_list(headpart);
            spec.period = parse_int_list(
                body.substr(open + 1, body.size() - open - 2));
        } else {
            spec.head = parse_int_list(body);
        }
        if (spec.head.empty() && spec.period.empty())
            throw domain_error("cf spec has no quotients");
        for (i64 a : spec.head)
            if (a < 1)
                throw domain_error("partial quotients must be >= 1");
        for (i64 a : spec.period)
            if (a < 1)
                throw domain_error("partial quotients must be >= 1");
        return spec;
    }
    // Bare numeric input is refused on purpose: a float does not determine
    // the tail of the expansion.
    char* end = nullptr;
    std::strtod(text.c_str(), &end);
    if (end && *end == '\0')
        throw domain_error(
            "alpha must be exact (golden | silver | quad:p,q,d,r | "
            "cf:...); a bare float does not pin down its continued "
            "fraction");
    throw domain_error("cannot parse alpha spec: " + text);
}

std::int64_t ContinuedFraction::an(std::size_t n) const {
    if (n < 1 || n > a.size())
        throw domain_error("a_n index out of range");
    return a[n - 1];
}

std::int64_t ContinuedFraction::pn(std::size_t n) const {
    if (n >= p.size())
        throw domain_error("p_n index out of range");
    return p[n];
}

std::int64_t ContinuedFraction::qn(std::size_t n) const {
    if (n >= q.size())
        throw domain_error("q_n index out of range");
    return q[n];
}

ContinuedFraction continued_fraction(const AlphaSpec& spec,
                                     std::size_t depth) {
    if (depth < 1)
        throw domain_error("expansion depth must be >= 1");

    ContinuedFraction cf;
    if (spec.kind == AlphaSpec::Kind::quadratic) {
        if (spec.q == 0)
            throw domain_error("q = 0 makes alpha rational; rejected");
        if (spec.r == 0)
            throw domain_error("zero denominator r");
        if (spec.d <= 0)
            throw domain_error("radicand d must be positive");
        i64 s = isqrt_floor(spec.d);
        if (s * s == spec.d)
            throw domain_error("d is a perfect square: alpha is rational, "
                               "and rational rotation numbers are rejected");

        // (p + q sqrt(d))/r  ->  (P + sqrt(N))/Q with N = q^2 d, flipping
        // signs when q < 0 so the radical enters positively.
        i128 N128 = static_cast<i128>(spec.q) * spec.q * spec.d;
        if (N128 > std::numeric_limits<i64>::max())
            throw resolution_error("radicand overflow");
        i64 P = spec.q > 0 ? spec.p : -spec.p;
        i64 Q = spec.q > 0 ? spec.r : -spec.r;
        i64 N = static_cast<i64>(N128);
        if ((static_cast<i128>(N) - static_cast<i128>(P) * P) % Q != 0) {
            i128 scale = Q < 0 ? -Q : Q;
            i128 P2 = P * scale, N2 = N * scale * scale, Q2 = Q * scale;
            if (P2 > std::numeric_limits<i64>::max() ||
                P2 < std::numeric_limits<i64>::min() ||
                N2 > std::numeric_limits<i64>::max() ||
                Q2 > std::numeric_limits<i64>::max() ||
                Q2 < std::numeric_limits<i64>::min())
                throw resolution_error("quadratic form normalization "
                                       "overflow");
            P = static_cast<i64>(P2);
            N = static_cast<i64>(N2);
            Q = static_cast<i64>(Q2);
        }

        SurdExpansion surd(P, N, Q);
        i64 a0 = surd.next_digit();
        if (a0 != 0)
            throw domain_error("alpha must lie in (0,1)");
        for (std::size_t i = 0; i < depth; ++i) {
            i64 a = surd.next_digit();
            if (a < 1)
                throw domain_error("alpha must lie in (0,1)");
            cf.a.push_back(a);
        }
        cf.alpha = spec.value();
        if (!(cf.alpha > 0.0 && cf.alpha < 1.0))
            throw domain_error("alpha must lie in (0,1)");
    } else {
        for (std::size_t i = 0; i < depth; ++i) {
            i64 a;
            if (i < spec.head.size())
                a = spec.head[i];
            else if (!spec.period.empty())
                a = spec.period[(i - spec.head.size()) % spec.period.size()];
            else
                a = spec.head[i % spec.head.size()];
            cf.a.push_back(a);
        }
        cf.alpha = spec.value();
    }

    // convergents: p_0 = 0, q_0 = 1, p_1 = 1, q_1 = a_1
    cf.p = {0, 1};
    cf.q = {1, cf.a[0]};
    for (std::size_t n = 2; n <= depth; ++n) {
        i64 an = cf.a[n - 1];
        i128 pn = static_cast<i128>(an) * cf.p[n - 1] + cf.p[n - 2];
        i128 qn = static_cast<i128>(an) * cf.q[n - 1] + cf.q[n - 2];
        if (pn > std::numeric_limits<i64>::max() ||
            qn > std::numeric_limits<i64>::max())
            throw resolution_error("convergent overflow at depth " +
                                   std::to_string(n) +
                                   "; lower the expansion depth");
        cf.p.push_back(static_cast<i64>(pn));
        cf.q.push_back(static_cast<i64>(qn));
    }
    return cf;
}

} // namespace qs
