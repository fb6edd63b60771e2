#include "quasispec/transfer.hpp"

#include <cmath>
#include <limits>

#include "quasispec/errors.hpp"
#include "quasispec/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qs {

Mat2 transfer(double E, const Potential& V, std::int64_t n) {
    if (n == 0) {
        return Mat2::identity();
    }
    Mat2 m = Mat2::identity();
    if (n >= 1) {
        if (!V.covers(1, n)) {
            throw domain_error("transfer: potential does not cover sites 1.." +
                               std::to_string(n));
        }
        for (std::int64_t j = 1; j <= n; ++j) {
            m = elementary_matrix(E, V(j)) * m;
        }
        return m;
    }
    // n <= -1: T(n+1)^{-1} x ... x T(0)^{-1}, built by prepending inverses
    // while walking j = 0 down to n+1.
    if (!V.covers(n + 1, 0)) {
        throw domain_error("transfer: potential does not cover sites " +
                           std::to_string(n + 1) + "..0");
    }
    for (std::int64_t j = 0; j >= n + 1; --j) {
        m = elementary_matrix(E, V(j)).inv_unimodular() * m;
    }
    return m;
}

Mat2 word_matrix(double E, const Word& w, const Coding& coding) {
    // anti-morphism: the factor of the first letter sits rightmost
    Mat2 m = Mat2::identity();
    for (char c : w.letters()) {
        m = elementary_matrix(E, coding.value(c)) * m;
    }
    return m;
}

double SolutionVector::at(std::int64_t n) const {
    const std::int64_t i = n - lo;
    if (i < 0 || i >= static_cast<std::int64_t>(u.size())) {
        throw domain_error("solution not materialized at site " +
                           std::to_string(n));
    }
    return u[static_cast<std::size_t>(i)];
}

Vec2 SolutionVector::state(std::int64_t n) const {
    return {at(n + 1), at(n)};
}

SolutionVector solve(double E, const Potential& V, double u1, double u0,
                     std::int64_t lo, std::int64_t hi) {
    if (lo > hi) {
        throw domain_error("solve: empty site range");
    }
    if (u0 == 0.0 && u1 == 0.0) {
        throw domain_error("solve: initial state must be nonzero");
    }
    // Always generate from the seed at sites 0/1, then keep the slice
    // lo..hi+1. The recursion needs V on 1..max(hi,1) going up and on
    // min(lo,0)+1..0 going down.
    const std::int64_t top = std::max<std::int64_t>(hi + 1, 1);
    const std::int64_t bot = std::min<std::int64_t>(lo, 0);
    if (top >= 2 && !V.covers(1, top - 1)) {
        throw domain_error("solve: potential does not cover sites 1.." +
                           std::to_string(top - 1));
    }
    if (bot <= -1 && !V.covers(bot + 1, 0)) {
        throw domain_error("solve: potential does not cover sites " +
                           std::to_string(bot + 1) + "..0");
    }
    std::vector<double> full(static_cast<std::size_t>(top - bot + 1));
    const auto idx = [bot](std::int64_t n) {
        return static_cast<std::size_t>(n - bot);
    };
    full[idx(0)] = u0;
    full[idx(1)] = u1;
    for (std::int64_t n = 1; n + 1 <= top; ++n) {
        full[idx(n + 1)] = (E - V(n)) * full[idx(n)] - full[idx(n - 1)];
    }
    for (std::int64_t n = 0; n - 1 >= bot; --n) {
        full[idx(n - 1)] = (E - V(n)) * full[idx(n)] - full[idx(n + 1)];
    }
    SolutionVector s;
    s.lo = lo;
    s.u.assign(full.begin() + static_cast<std::ptrdiff_t>(idx(lo)),
               full.begin() + static_cast<std::ptrdiff_t>(idx(hi + 1)) + 1);
    return s;
}

double lyapunov_estimate(double E, const Potential& V, std::int64_t n) {
    if (n < 1) {
        throw domain_error("lyapunov_estimate needs n >= 1");
    }
    if (!V.covers(1, n)) {
        throw domain_error("lyapunov_estimate: potential window too small");
    }
    Mat2 m = Mat2::identity();
    double logscale = 0.0;
    for (std::int64_t j = 1; j <= n; ++j) {
        m = elementary_matrix(E, V(j)) * m;
        // rescale every 32 steps; the cheap entry check catches runaway
        // growth (huge E) between scheduled rescales
        if (j % 32 == 0 || std::fabs(m.a) > 1e100) {
            const double r = m.frobenius();
            m = m * (1.0 / r);
            logscale += std::log(r);
        }
    }
    return (logscale + std::log(m.norm2())) / static_cast<double>(n);
}

std::vector<double> lyapunov_grid_serial(const std::vector<double>& energies,
                                         const Potential& V, std::int64_t n) {
    std::vector<double> out(energies.size());
    for (std::size_t i = 0; i < energies.size(); ++i) {
        out[i] = lyapunov_estimate(energies[i], V, n);
    }
    return out;
}

std::vector<double> lyapunov_grid(const std::vector<double>& energies,
                                  const Potential& V, std::int64_t n) {
    std::vector<double> out(energies.size());
    const std::int64_t count = static_cast<std::int64_t>(energies.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < count; ++i) {
        out[static_cast<std::size_t>(i)] =
            lyapunov_estimate(energies[static_cast<std::size_t>(i)], V, n);
    }
    return out;
}

double truncated_norm(const SolutionVector& u, double L) {
    if (L < 1.0) {
        throw domain_error("truncated_norm needs L >= 1");
    }
    const auto m = static_cast<std::int64_t>(std::floor(L));
    double sum = 0.0;
    for (std::int64_t n = 1; n <= m; ++n) {
        const double v = u.at(n);
        sum += v * v;
    }
    const double frac = L - static_cast<double>(m);
    if (frac > 0.0) {
        const double v = u.at(m + 1);
        sum += frac * v * v;
    }
    return std::sqrt(sum);
}

double log_truncated_norm(const SolutionVector& u, double L) {
    if (L < 1.0) {
        throw domain_error("log_truncated_norm needs L >= 1");
    }
    const auto m = static_cast<std::int64_t>(std::floor(L));
    const double frac = L - static_cast<double>(m);
    double big = 0.0;
    for (std::int64_t n = 1; n <= m; ++n) {
        big = std::fmax(big, std::fabs(u.at(n)));
    }
    if (frac > 0.0) {
        big = std::fmax(big, std::fabs(u.at(m + 1)));
    }
    if (big == 0.0) {
        return -std::numeric_limits<double>::infinity();
    }
    double sum = 0.0;
    for (std::int64_t n = 1; n <= m; ++n) {
        const double v = u.at(n) / big;
        sum += v * v;
    }
    if (frac > 0.0) {
        const double v = u.at(m + 1) / big;
        sum += frac * v * v;
    }
    return std::log(big) + 0.5 * std::log(sum);
}

std::vector<double> jl_ratio(double E, const Potential& V, double alpha,
                             const std::vector<double>& L_grid) {
    if (!(alpha > 0.0) || !(alpha < 2.0)) {
        throw domain_error("jl_ratio needs alpha in (0, 2)");
    }
    double maxL = 0.0;
    for (double L : L_grid) {
        if (!(L > 1.0)) {
            // ||phi_2||_1 = 0 identically (phi_2(1) = 0), so the ratio only
            // makes sense strictly past the first site
            throw domain_error("jl_ratio needs every L > 1");
        }
        maxL = std::fmax(maxL, L);
    }
    const auto hi = static_cast<std::int64_t>(std::floor(maxL)) + 1;
    const SolutionVector phi1 = solve(E, V, 1.0, 0.0, 0, hi);
    const SolutionVector phi2 = solve(E, V, 0.0, 1.0, 0, hi);
    std::vector<double> out;
    out.reserve(L_grid.size());
    for (double L : L_grid) {
        const double l1 = log_truncated_norm(phi1, L);
        const double l2 = log_truncated_norm(phi2, L);
        out.push_back(std::exp((2.0 - alpha) * l1 - alpha * l2));
    }
    return out;
}

} // namespace qs
