#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quasispec/contfrac.hpp"
#include "quasispec/mat2.hpp"
#include "quasispec/word.hpp"

namespace qs {

// Magnitude at which trace orbits are truncated (values this large certify
// escape on their own; further squaring would overflow).
inline constexpr double kTraceClamp = 1e150;

// Trace sequence x_{-1}, x_0, ..., x_N (truncated early on clamp).
struct TraceOrbit {
    double E = 0.0;
    double lambda = 0.0;
    std::vector<double> values;              // values[i] = x_{i-1}
    std::optional<std::int64_t> escape_index; // first n with |x_n| > bound
    double bound_used = 0.0;
    bool saturated = false;                  // hit kTraceClamp, tail cut

    [[nodiscard]] double x(std::int64_t n) const; // n from -1
    [[nodiscard]] std::int64_t max_level() const {
        return static_cast<std::int64_t>(values.size()) - 2;
    }
};

// Coupling-dependent trace bound 2 + sqrt(8 + lambda^2): orbits staying
// below it at every level correspond to spectrum energies.
double trace_bound(double lambda);

// x_n(E) alone: sign exact, magnitude clamped at kTraceClamp. Internally
// renormalized, so it stays usable arbitrarily far off-spectrum where the
// full orbit would truncate.
double trace_value(double E, double lambda, const ContinuedFraction& cf,
                   std::int64_t n);

// x_n = tr(M_n) for the standard blocks s_n, computed through the matrix
// recursion M_n = M_{n-2} M_{n-1}^{a_n} with powers expanded by the
// three-term recursion. Seeds: x_{-1} = E - lambda (value at symbol 1),
// x_0 = E. escape_index is set relative to `bound` (default trace_bound).
TraceOrbit sturmian_traces(double E, double lambda,
                           const ContinuedFraction& cf, std::int64_t N,
                           std::optional<double> bound = std::nullopt);

// One scalar step of the golden-mean trace recursion: from (x_n, x_{n-1},
// x_{n-2}) to x_{n+1} = x_n x_{n-1} - x_{n-2}.
inline double fibonacci_step(double x, double y, double z) {
    return x * y - z;
}

// Trace triple over the enlarged generating set {a, b, ab}.
struct TraceState2 {
    double x = 0.0; // tr M(a)
    double y = 0.0; // tr M(b)
    double z = 0.0; // tr M(ab)
};

// Trivariate polynomial with integer-valued coefficients, exponents of
// (x, y, z); small and sparse, used only for compiled trace steps.
class Poly3 {
  public:
    using Key = std::array<int, 3>;

    void add(const Key& k, double c);
    [[nodiscard]] double eval(double x, double y, double z) const;
    [[nodiscard]] const std::map<Key, double>& terms() const {
        return terms_;
    }
    [[nodiscard]] std::string to_string() const; // e.g. "x*z - y"

    Poly3& operator+=(const Poly3& o);
    Poly3& operator-=(const Poly3& o);
    [[nodiscard]] Poly3 times(const Poly3& o) const;
    static Poly3 constant(double c);
    static Poly3 variable(int which); // 0 -> x, 1 -> y, 2 -> z

  private:
    std::map<Key, double> terms_;
};

// Compiled trace map of a two-letter substitution: the image traces
// rewritten once, mechanically, into polynomials in (x, y, z) through the
// power identity M^2 = tr(M) M - I and cyclic trace reduction.
class TraceMapStep {
  public:
    explicit TraceMapStep(const SubstitutionRule& rule);

    [[nodiscard]] TraceState2 apply(const TraceState2& s) const;
    [[nodiscard]] const Poly3& px() const { return px_; }
    [[nodiscard]] const Poly3& py() const { return py_; }
    [[nodiscard]] const Poly3& pz() const { return pz_; }

  private:
    Poly3 px_, py_, pz_;
};

// One application of the compiled map (throws domain_error for rules not on
// exactly two letters — the generating set {a, b, ab} only closes there).
TraceState2 trace_triple_step(const SubstitutionRule& rule,
                              const TraceState2& s);

// Matrix-seeded state at level 0: (tr M(a), tr M(b), tr M(ab)) with symbol
// values from the coding.
TraceState2 seed_trace_state(double E, const SubstitutionRule& rule,
                             const std::map<char, double>& coding);

// |tr(MNMO) - (tr(MN) tr(MO) + tr(NO) - tr(N) tr(O))|.
double trace_identity_check(const Mat2& M, const Mat2& N, const Mat2& O);

enum class EnergyClass { certified_out, undecided_in };

struct Classification {
    EnergyClass result = EnergyClass::undecided_in;
    std::int64_t level = 0; // certification level, or N_max for undecided
};

// CERTIFIED_OUT(m) needs |x_m| > bound and strictly growing |x| across
// three consecutive levels (or clamp saturation); otherwise UNDECIDED_IN
// at N_max. Certificates depend only on the orbit through m+2, so they are
// stable under enlarging N_max.
Classification classify_energy(double E, double lambda,
                               const ContinuedFraction& cf,
                               std::int64_t N_max);

// Grid versions; parallel kernel plus the serial reference.
std::vector<Classification>
classify_grid(const std::vector<double>& energies, double lambda,
              const ContinuedFraction& cf, std::int64_t N_max);
std::vector<Classification>
classify_grid_serial(const std::vector<double>& energies, double lambda,
                     const ContinuedFraction& cf, std::int64_t N_max);

} // namespace qs
