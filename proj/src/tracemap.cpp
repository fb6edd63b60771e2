#include "quasispec/tracemap.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "quasispec/errors.hpp"

namespace qs {

namespace {

// Renormalized 2x2 product machinery. A matrix is stored as m * e^{logs}
// with ||m||_F = 1, so products over hundreds of levels never overflow and
// the trace sign stays exact even when the true magnitude is astronomical.
struct ScaledMat {
    Mat2 m;
    double logs = 0.0;
};

ScaledMat normalized(const Mat2& m, double logs) {
    const double r = m.frobenius();
    return {m * (1.0 / r), logs + std::log(r)};
}

ScaledMat smul(const ScaledMat& a, const ScaledMat& b) {
    return normalized(a.m * b.m, a.logs + b.logs);
}

// a^k through the power recursion A^j = tr(A) A^{j-1} - det(A) A^{j-2}
// applied to the stored (normalized) matrix; the pair is jointly rescaled
// whenever it grows, which keeps the recursion valid (it is linear).
ScaledMat spow(const ScaledMat& a, std::int64_t k) {
    if (k == 0) {
        return normalized(Mat2::identity(), 0.0);
    }
    if (k == 1) {
        return a;
    }
    const double t = a.m.trace();
    const double d = a.m.det();
    Mat2 prev = Mat2::identity();
    Mat2 cur = a.m;
    double plog = 0.0;
    for (std::int64_t j = 2; j <= k; ++j) {
        const Mat2 next = cur * t - prev * d;
        prev = cur;
        cur = next;
        const double f = cur.frobenius();
        if (f > 1e50) {
            cur = cur * (1.0 / f);
            prev = prev * (1.0 / f);
            plog += std::log(f);
        }
    }
    return normalized(cur, plog + static_cast<double>(k) * a.logs);
}

// Signed trace with the magnitude clamped at kTraceClamp, evaluated in log
// space so e^{logs} itself is never formed.
double clamped_trace(const ScaledMat& a) {
    const double t = a.m.trace();
    if (t == 0.0) {
        return 0.0;
    }
    const double lg = std::log(std::fabs(t)) + a.logs;
    if (lg >= std::log(kTraceClamp)) {
        return t > 0.0 ? kTraceClamp : -kTraceClamp;
    }
    return (t > 0.0 ? 1.0 : -1.0) * std::exp(lg);
}

// Beyond this log-magnitude the running scale itself would stop being
// representable downstream; levels past it keep the clamped value of the
// freeze point (magnitudes there are 450 orders past the clamp already).
constexpr double kLogFreeze = 600.0;

// x_{-1} .. x_N, every value clamped at +-kTraceClamp, computed through
// M_1 = M_{-1} M_0^{a_1 - 1}, M_n = M_{n-2} M_{n-1}^{a_n}.
std::vector<double> clamped_trace_sequence(double E, double lambda,
                                           const ContinuedFraction& cf,
                                           std::int64_t N) {
    if (N < 0) {
        throw domain_error("trace orbit needs N >= 0");
    }
    if (N > static_cast<std::int64_t>(cf.depth())) {
        throw domain_error("trace orbit needs cf depth >= N");
    }
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(N) + 2);
    ScaledMat prev2 = normalized(elementary_matrix(E, lambda), 0.0); // M_{-1}
    ScaledMat prev = normalized(elementary_matrix(E, 0.0), 0.0);     // M_0
    xs.push_back(clamped_trace(prev2));
    xs.push_back(clamped_trace(prev));
    for (std::int64_t n = 1; n <= N; ++n) {
        const std::int64_t k = n == 1 ? cf.an(1) - 1 : cf.an(n);
        const ScaledMat cur = smul(prev2, spow(prev, k));
        xs.push_back(clamped_trace(cur));
        if (cur.logs > kLogFreeze) {
            while (static_cast<std::int64_t>(xs.size()) <
                   N + 2) { // freeze: see kLogFreeze
                xs.push_back(xs.back());
            }
            break;
        }
        prev2 = prev;
        prev = cur;
    }
    return xs;
}

bool grows(double from, double to) {
    return std::fabs(to) > std::fabs(from) || std::fabs(to) >= kTraceClamp;
}

} // namespace

double TraceOrbit::x(std::int64_t n) const {
    const std::int64_t i = n + 1;
    if (i < 0 || i >= static_cast<std::int64_t>(values.size())) {
        throw domain_error("trace orbit has no level " + std::to_string(n));
    }
    return values[static_cast<std::size_t>(i)];
}

double trace_bound(double lambda) {
    return 2.0 + std::sqrt(8.0 + lambda * lambda);
}

double trace_value(double E, double lambda, const ContinuedFraction& cf,
                   std::int64_t n) {
    return clamped_trace_sequence(E, lambda, cf, n).back();
}

TraceOrbit sturmian_traces(double E, double lambda,
                           const ContinuedFraction& cf, std::int64_t N,
                           std::optional<double> bound) {
    TraceOrbit orbit;
    orbit.E = E;
    orbit.lambda = lambda;
    orbit.bound_used = bound.value_or(trace_bound(lambda));

    std::vector<double> xs = clamped_trace_sequence(E, lambda, cf, N);
    // truncate at the first clamped level: magnitudes past it carry no
    // information beyond "escaped"
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (std::fabs(xs[i]) >= kTraceClamp) {
            xs.resize(i + 1);
            orbit.saturated = true;
            break;
        }
    }
    orbit.values = std::move(xs);

    // escape index: start of the longest monotonically growing tail, but
    // only where the values already clear the bound
    const auto& v = orbit.values;
    std::size_t tail = v.size() - 1;
    while (tail > 0 && grows(v[tail - 1], v[tail])) {
        --tail;
    }
    for (std::size_t i = tail; i < v.size(); ++i) {
        if (std::fabs(v[i]) > orbit.bound_used) {
            orbit.escape_index = static_cast<std::int64_t>(i) - 1;
            break;
        }
    }
    return orbit;
}

// ---- compiled trace maps over {a, b, ab} ----

void Poly3::add(const Key& k, double c) {
    const double v = (terms_[k] += c);
    if (v == 0.0) {
        terms_.erase(k);
    }
}

double Poly3::eval(double x, double y, double z) const {
    double sum = 0.0;
    for (const auto& [k, c] : terms_) {
        double mono = c;
        for (int i = 0; i < k[0]; ++i) mono *= x;
        for (int i = 0; i < k[1]; ++i) mono *= y;
        for (int i = 0; i < k[2]; ++i) mono *= z;
        sum += mono;
    }
    return sum;
}

std::string Poly3::to_string() const {
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream out;
    bool first = true;
    // highest-degree terms first reads more naturally
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [k, c] = *it;
        const double ac = std::fabs(c);
        out << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
        first = false;
        const bool bare = k[0] == 0 && k[1] == 0 && k[2] == 0;
        if (ac != 1.0 || bare) {
            if (ac == std::floor(ac)) {
                out << static_cast<long long>(ac);
            } else {
                out << ac;
            }
            if (!bare) {
                out << "*";
            }
        }
        const char* names[3] = {"x", "y", "z"};
        bool firstvar = true;
        for (int v = 0; v < 3; ++v) {
            if (k[v] == 0) {
                continue;
            }
            if (!firstvar) {
                out << "*";
            }
            firstvar = false;
            out << names[v];
            if (k[v] > 1) {
                out << "^" << k[v];
            }
        }
    }
    return out.str();
}

Poly3& Poly3::operator+=(const Poly3& o) {
    for (const auto& [k, c] : o.terms_) {
        add(k, c);
    }
    return *this;
}

Poly3& Poly3::operator-=(const Poly3& o) {
    for (const auto& [k, c] : o.terms_) {
        add(k, -c);
    }
    return *this;
}

Poly3 Poly3::times(const Poly3& o) const {
    Poly3 out;
    for (const auto& [k1, c1] : terms_) {
        for (const auto& [k2, c2] : o.terms_) {
            out.add({k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2]}, c1 * c2);
        }
    }
    return out;
}

Poly3 Poly3::constant(double c) {
    Poly3 p;
    if (c != 0.0) {
        p.add({0, 0, 0}, c);
    }
    return p;
}

Poly3 Poly3::variable(int which) {
    Poly3 p;
    Key k{0, 0, 0};
    k[static_cast<std::size_t>(which)] = 1;
    p.add(k, 1.0);
    return p;
}

namespace {

// tr of a left-to-right product word over the generators {a, b}, as a
// polynomial in x = tr a, y = tr b, z = tr ab. Reduction: traces are
// invariant under cyclic rotation, and a doubled letter collapses through
// tr(U c c) = t_c tr(U c) - tr(U) (from c^2 = t_c c - I). A word with no
// doubled letter, cyclically, is alternating of even length, i.e. (ab)^m,
// and tr((ab)^m) follows the same power recursion in z. Every step
// shortens the word, so the rewriting terminates; it closes over {a,b,ab}
// precisely because the alphabet has two letters.
Poly3 reduce_word(const std::string& w,
                  std::map<std::string, Poly3>& memo) {
    if (w.empty()) {
        return Poly3::constant(2.0);
    }
    if (w.size() == 1) {
        return Poly3::variable(w[0] == 'a' ? 0 : 1);
    }
    const auto hit = memo.find(w);
    if (hit != memo.end()) {
        return hit->second;
    }
    const std::size_t n = w.size();
    Poly3 result;
    bool reduced = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (w[i] != w[(i + 1) % n]) {
            continue;
        }
        // rotate the doubled pair to the end: w' = U c c
        std::string rot;
        rot.reserve(n);
        for (std::size_t j = 0; j < n; ++j) {
            rot.push_back(w[(i + 2 + j) % n]);
        }
        const std::string U = rot.substr(0, n - 2);
        const char c = rot[n - 1];
        Poly3 tc = Poly3::variable(c == 'a' ? 0 : 1);
        result = tc.times(reduce_word(U + c, memo));
        result -= reduce_word(U, memo);
        reduced = true;
        break;
    }
    if (!reduced) {
        // cyclically alternating: odd length would give a doubled letter
        // at the wrap, so n is even and the word is (ab)^m up to rotation
        const std::size_t m = n / 2;
        Poly3 prev = Poly3::constant(2.0);
        Poly3 cur = Poly3::variable(2);
        for (std::size_t j = 2; j <= m; ++j) {
            Poly3 next = Poly3::variable(2).times(cur);
            next -= prev;
            prev = cur;
            cur = next;
        }
        result = cur;
    }
    memo.emplace(w, result);
    return result;
}

// image word rewritten over the canonical letters a, b in matrix product
// order (word reversal: the representation is an anti-morphism)
std::string product_string(const SubstitutionRule& rule, char letter) {
    const std::string& sym = rule.alphabet.symbols();
    const std::string& img = rule.image(letter);
    std::string out;
    out.reserve(img.size());
    for (auto it = img.rbegin(); it != img.rend(); ++it) {
        out.push_back(*it == sym[0] ? 'a' : 'b');
    }
    return out;
}

} // namespace

TraceMapStep::TraceMapStep(const SubstitutionRule& rule) {
    if (rule.alphabet.size() != 2) {
        throw domain_error(
            "trace map closes over {a, b, ab} only for two-letter rules; "
            "alphabet '" +
            rule.alphabet.symbols() + "' leaves irreducible residues (tr of " +
            std::to_string(rule.alphabet.size()) +
            "-letter products is not expressible in the pair traces)");
    }
    std::map<std::string, Poly3> memo;
    const std::string pa = product_string(rule, rule.alphabet.symbols()[0]);
    const std::string pb = product_string(rule, rule.alphabet.symbols()[1]);
    px_ = reduce_word(pa, memo);
    py_ = reduce_word(pb, memo);
    // M(S(a)S(b)) = M(S(b)) M(S(a)) = P(pb ++ pa)
    pz_ = reduce_word(pb + pa, memo);
}

TraceState2 TraceMapStep::apply(const TraceState2& s) const {
    return {px_.eval(s.x, s.y, s.z), py_.eval(s.x, s.y, s.z),
            pz_.eval(s.x, s.y, s.z)};
}

TraceState2 trace_triple_step(const SubstitutionRule& rule,
                              const TraceState2& s) {
    return TraceMapStep(rule).apply(s);
}

TraceState2 seed_trace_state(double E, const SubstitutionRule& rule,
                             const std::map<char, double>& coding) {
    if (rule.alphabet.size() != 2) {
        throw domain_error("trace state seeds need a two-letter rule");
    }
    const char ca = rule.alphabet.symbols()[0];
    const char cb = rule.alphabet.symbols()[1];
    const auto ita = coding.find(ca);
    const auto itb = coding.find(cb);
    if (ita == coding.end() || itb == coding.end()) {
        throw domain_error("coding misses a symbol of the rule alphabet");
    }
    const Mat2 A = elementary_matrix(E, ita->second);
    const Mat2 B = elementary_matrix(E, itb->second);
    return {A.trace(), B.trace(), (B * A).trace()};
}

double trace_identity_check(const Mat2& M, const Mat2& N, const Mat2& O) {
    for (const Mat2* m : {&M, &N, &O}) {
        if (std::fabs(m->det() - 1.0) > 1e-6) {
            throw domain_error("trace identity needs unimodular inputs");
        }
    }
    const double lhs = (M * N * M * O).trace();
    const double rhs = (M * N).trace() * (M * O).trace() + (N * O).trace() -
                       N.trace() * O.trace();
    return std::fabs(lhs - rhs);
}

Classification classify_energy(double E, double lambda,
                               const ContinuedFraction& cf,
                               std::int64_t N_max) {
    if (N_max > static_cast<std::int64_t>(cf.depth())) {
        throw domain_error("classify_energy needs N_max <= cf depth");
    }
    const double bound = trace_bound(lambda);
    const std::vector<double> xs =
        clamped_trace_sequence(E, lambda, cf, N_max);
    const std::size_t last = xs.size() - 1;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (std::fabs(xs[i]) <= bound) {
            continue;
        }
        bool tail_ok = true;
        for (std::size_t j = i + 1; j <= last; ++j) {
            if (std::fabs(xs[j]) <= bound) {
                tail_ok = false;
                break;
            }
        }
        if (!tail_ok) {
            continue;
        }
        const bool saturated_here = std::fabs(xs[i]) >= kTraceClamp;
        const bool growth3 = i + 2 <= last && grows(xs[i], xs[i + 1]) &&
                             grows(xs[i + 1], xs[i + 2]);
        if (growth3 || saturated_here) {
            return {EnergyClass::certified_out,
                    static_cast<std::int64_t>(i) - 1};
        }
    }
    return {EnergyClass::undecided_in, N_max};
}

std::vector<Classification>
classify_grid_serial(const std::vector<double>& energies, double lambda,
                     const ContinuedFraction& cf, std::int64_t N_max) {
    std::vector<Classification> out(energies.size());
    for (std::size_t i = 0; i < energies.size(); ++i) {
        out[i] = classify_energy(energies[i], lambda, cf, N_max);
    }
    return out;
}

std::vector<Classification>
classify_grid(const std::vector<double>& energies, double lambda,
              const ContinuedFraction& cf, std::int64_t N_max) {
    std::vector<Classification> out(energies.size());
    const std::int64_t count = static_cast<std::int64_t>(energies.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < count; ++i) {
        out[static_cast<std::size_t>(i)] =
            classify_energy(energies[static_cast<std::size_t>(i)], lambda, cf,
                            N_max);
    }
    return out;
}

} // namespace qs
