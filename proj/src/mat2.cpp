#include "quasispec/mat2.hpp"

#include "quasispec/errors.hpp"

namespace qs {

// Powers stay inside the trace algebra: M^k = tr(M) M^{k-1} - M^{k-2}
// (Cayley-Hamilton with det = 1), seeded by I and M. Exact in exact
// arithmetic, and numerically benign: the recursion is the Chebyshev one.
Mat2 unimodular_power(const Mat2& m, long k) {
    if (k < 0) {
        throw domain_error("unimodular_power: negative exponent");
    }
    if (k == 0) {
        return Mat2::identity();
    }
    const double t = m.trace();
    Mat2 prev = Mat2::identity();
    Mat2 cur = m;
    for (long j = 2; j <= k; ++j) {
        const Mat2 next = cur * t - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double unimodular_power_trace(double t, long k) {
    if (k < 0) {
        throw domain_error("unimodular_power_trace: negative exponent");
    }
    double prev = 2.0; // tr(I)
    double cur = t;
    if (k == 0) {
        return prev;
    }
    for (long j = 2; j <= k; ++j) {
        const double next = t * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

} // namespace qs
