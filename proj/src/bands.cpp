#include "quasispec/bands.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <lapacke.h>

#include "quasispec/errors.hpp"
#include "quasispec/sturmian.hpp"

namespace qs {

namespace {

// Eigenvalues (ascending) of the q-site approximant with wrap coupling s:
// +1 periodic, -1 antiperiodic. For q = 1 both corners land on the single
// diagonal cell, giving V + 2s as required.
std::vector<double> approximant_eigs(const std::vector<double>& v, double s) {
    const auto q = static_cast<lapack_int>(v.size());
    std::vector<double> H(v.size() * v.size(), 0.0);
    const auto at = [&H, q](lapack_int i, lapack_int j) -> double& {
        return H[static_cast<std::size_t>(i) +
                 static_cast<std::size_t>(j) * static_cast<std::size_t>(q)];
    };
    for (lapack_int i = 0; i < q; ++i) {
        at(i, i) = v[static_cast<std::size_t>(i)];
    }
    for (lapack_int i = 0; i + 1 < q; ++i) {
        at(i, i + 1) += 1.0;
        at(i + 1, i) += 1.0;
    }
    at(q - 1, 0) += s;
    at(0, q - 1) += s;
    std::vector<double> w(v.size());
    const lapack_int info = LAPACKE_dsyev(LAPACK_COL_MAJOR, 'N', 'L', q,
                                          H.data(), q, w.data());
    if (info != 0) {
        throw resolution_error("approximant eigenproblem failed to converge");
    }
    return w;
}

// bisection of g to a sign change at machine resolution (the interval
// collapses to ~4 ulp); the bracket is guaranteed by the caller
double bisect(const std::function<double(double)>& g, double a, double b,
              double ga) {
    for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) {
            break; // no representable point left between the brackets
        }
        const double gm = g(m);
        if (gm == 0.0) {
            return m;
        }
        if ((gm > 0.0) == (ga > 0.0)) {
            a = m;
            ga = gm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

// maximum of a unimodal h on [a, b] by ternary search
double ternary_max(const std::function<double(double)>& h, double a,
                   double b) {
    for (int it = 0; it < 240 && b - a > 1e-15 * (1.0 + std::fabs(a)); ++it) {
        const double m1 = a + (b - a) / 3.0;
        const double m2 = b - (b - a) / 3.0;
        if (h(m1) < h(m2)) {
            a = m1;
        } else {
            b = m2;
        }
    }
    return 0.5 * (a + b);
}

} // namespace

double BandList::measure() const {
    double sum = 0.0;
    for (const Band& b : bands) {
        sum += b.length();
    }
    return sum;
}

bool BandList::contains(double E) const {
    for (const Band& b : bands) {
        if (E >= b.lo && E <= b.hi) {
            return true;
        }
        if (b.lo > E) {
            break;
        }
    }
    return false;
}

std::pair<double, double> spectrum_bounds(double lambda) {
    const double vmin = std::min(0.0, lambda);
    const double vmax = std::max(0.0, lambda);
    return {-2.0 + vmin, 2.0 + vmax};
}

BandList approx_bands(double lambda, const ContinuedFraction& cf,
                      std::int64_t n, double tol) {
    if (n < 0 || n > static_cast<std::int64_t>(cf.depth())) {
        throw domain_error("approx_bands needs 0 <= n <= cf depth");
    }
    if (!(tol > 0.0)) {
        throw domain_error("approx_bands needs tol > 0");
    }
    const std::int64_t qn = cf.qn(n);

    // Band edges are exactly the eigenvalues of the periodic and
    // antiperiodic q_n-site approximants (the discriminant x_n equals +-2
    // there); the sorted union pairs off into the q_n bands, degenerate
    // pairs being the touching points. Exact and scan-free; the adaptive
    // trace scan below only covers q_n too large for dense eigensolvers,
    // where it can fail with resolution_error at strong coupling.
    if (qn <= 2000) {
        const Word sn = sturmian_block(cf, n);
        std::vector<double> v;
        v.reserve(sn.size());
        for (const char c : sn.letters()) {
            v.push_back(c == '1' ? lambda : 0.0);
        }
        std::vector<double> edges = approximant_eigs(v, 1.0);
        const std::vector<double> anti = approximant_eigs(v, -1.0);
        edges.insert(edges.end(), anti.begin(), anti.end());
        std::sort(edges.begin(), edges.end());

        BandList out;
        out.level = n;
        out.lambda = lambda;
        out.tol = tol;
        out.bands.resize(static_cast<std::size_t>(qn));
        for (std::int64_t i = 0; i < qn; ++i) {
            Band& band = out.bands[static_cast<std::size_t>(i)];
            band.lo = edges[static_cast<std::size_t>(2 * i)];
            band.hi = edges[static_cast<std::size_t>(2 * i) + 1];
        }
        for (std::int64_t i = 0; i + 1 < qn; ++i) {
            Band& a = out.bands[static_cast<std::size_t>(i)];
            Band& b = out.bands[static_cast<std::size_t>(i) + 1];
            if (b.lo - a.hi <= tol) {
                a.hi = b.lo = 0.5 * (a.hi + b.lo);
                a.touches_next = true;
            }
        }
        return out;
    }

    const auto [lo, hi] = spectrum_bounds(lambda);
    const auto f = [&](double E) { return trace_value(E, lambda, cf, n); };

    // --- locate the q_n zeros of x_n: scan, then refine cells that could
    // still hide a band (small values, or a steep magnitude cliff) ---
    std::vector<std::pair<double, double>> pts; // (E, x(E)), sorted in E
    const std::int64_t n0 = 16 * qn + 1;
    pts.reserve(static_cast<std::size_t>(n0));
    for (std::int64_t i = 0; i < n0; ++i) {
        const double E =
            lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n0 - 1);
        pts.emplace_back(E, f(E));
    }
    const double focus = std::fmax(50.0, trace_bound(lambda));
    const std::size_t budget = static_cast<std::size_t>(64 * n0);
    std::size_t spent = pts.size();
    const auto count_brackets = [&]() {
        std::int64_t c = 0;
        for (std::size_t i = 1; i < pts.size(); ++i) {
            if ((pts[i - 1].second > 0.0) != (pts[i].second > 0.0)) {
                ++c;
            }
        }
        return c;
    };
    for (int round = 0; round < 12 && count_brackets() < qn; ++round) {
        std::vector<std::pair<double, double>> next;
        next.reserve(pts.size() * 2);
        bool grew = false;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            next.push_back(pts[i]);
            const auto& [ea, va] = pts[i];
            const auto& [eb, vb] = pts[i + 1];
            const bool bracket = (va > 0.0) != (vb > 0.0);
            const bool small = std::fmin(std::fabs(va), std::fabs(vb)) < focus;
            const bool cliff =
                std::fabs(std::log(std::fabs(va)) - std::log(std::fabs(vb))) >
                2.0;
            if (!bracket && (small || cliff) && spent + 2 <= budget) {
                const double e1 = ea + (eb - ea) / 3.0;
                const double e2 = eb - (eb - ea) / 3.0;
                next.emplace_back(e1, f(e1));
                next.emplace_back(e2, f(e2));
                spent += 2;
                grew = true;
            }
        }
        next.push_back(pts.back());
        pts = std::move(next);
        if (!grew) {
            break;
        }
    }
    if (count_brackets() != qn) {
        throw resolution_error(
            "level " + std::to_string(n) + " band scan found " +
            std::to_string(count_brackets()) + " of " + std::to_string(qn) +
            " trace zeros; refine with a smaller tol or a denser scan");
    }
    std::vector<double> zeros;
    zeros.reserve(static_cast<std::size_t>(qn));
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if ((pts[i - 1].second > 0.0) != (pts[i].second > 0.0)) {
            zeros.push_back(bisect(f, pts[i - 1].first, pts[i].first,
                                   pts[i - 1].second));
        }
    }

    // --- one extremum between consecutive zeros; touching bands meet
    // there. Signs alternate leftward from +1 on (z_qn, +inf) since x_n is
    // monic of degree q_n. ---
    const auto region_sign = [qn](std::int64_t i) {
        return (qn - i) % 2 == 0 ? 1.0 : -1.0;
    };
    std::vector<double> crit(static_cast<std::size_t>(qn) - 1);
    std::vector<double> critval(static_cast<std::size_t>(qn) - 1);
    std::vector<bool> touch(static_cast<std::size_t>(qn) - 1);
    for (std::int64_t i = 0; i + 1 < qn; ++i) {
        const double s = region_sign(i + 1);
        const double c = ternary_max(
            [&](double E) { return s * f(E); }, zeros[static_cast<std::size_t>(i)],
            zeros[static_cast<std::size_t>(i) + 1]);
        crit[static_cast<std::size_t>(i)] = c;
        critval[static_cast<std::size_t>(i)] = f(c);
        touch[static_cast<std::size_t>(i)] =
            std::fabs(critval[static_cast<std::size_t>(i)]) <= 2.0 + 1e-9;
    }

    // --- band edges: |x| = 2 crossings around each zero ---
    BandList out;
    out.level = n;
    out.lambda = lambda;
    out.tol = tol;
    out.bands.resize(static_cast<std::size_t>(qn));
    const auto edge = [&](double a, double b, double target) {
        const auto g = [&](double E) { return f(E) - target; };
        return bisect(g, a, b, g(a));
    };
    for (std::int64_t i = 0; i < qn; ++i) {
        Band& band = out.bands[static_cast<std::size_t>(i)];
        // left edge
        if (i == 0) {
            band.lo = edge(lo - 1.0, zeros[0], 2.0 * region_sign(0));
        } else if (touch[static_cast<std::size_t>(i) - 1]) {
            band.lo = crit[static_cast<std::size_t>(i) - 1];
        } else {
            band.lo = edge(crit[static_cast<std::size_t>(i) - 1],
                           zeros[static_cast<std::size_t>(i)],
                           2.0 * region_sign(i));
        }
        // right edge
        if (i == qn - 1) {
            band.hi = edge(zeros[static_cast<std::size_t>(i)], hi + 1.0, 2.0);
        } else if (touch[static_cast<std::size_t>(i)]) {
            band.hi = crit[static_cast<std::size_t>(i)];
            band.touches_next = true;
        } else {
            band.hi = edge(zeros[static_cast<std::size_t>(i)],
                           crit[static_cast<std::size_t>(i)],
                           2.0 * region_sign(i + 1));
        }
    }
    // snap residual sub-tol gaps onto the extremum (touching within tol)
    for (std::int64_t i = 0; i + 1 < qn; ++i) {
        Band& a = out.bands[static_cast<std::size_t>(i)];
        Band& b = out.bands[static_cast<std::size_t>(i) + 1];
        if (!a.touches_next && b.lo - a.hi < tol) {
            a.hi = b.lo = crit[static_cast<std::size_t>(i)];
            a.touches_next = true;
        }
    }
    for (std::int64_t i = 0; i < qn; ++i) {
        const Band& b = out.bands[static_cast<std::size_t>(i)];
        if (!(b.lo <= b.hi) ||
            (i > 0 && b.lo < out.bands[static_cast<std::size_t>(i) - 1].hi)) {
            throw resolution_error(
                "level " + std::to_string(n) +
                " band edges came out unordered; use a smaller tol");
        }
    }
    return out;
}

double band_measure(const BandList& bands) { return bands.measure(); }

std::vector<double> trace_grid_serial(const std::vector<double>& energies,
                                      double lambda,
                                      const ContinuedFraction& cf,
                                      std::int64_t n) {
    std::vector<double> out(energies.size());
    for (std::size_t i = 0; i < energies.size(); ++i) {
        out[i] = trace_value(energies[i], lambda, cf, n);
    }
    return out;
}

std::vector<double> trace_grid(const std::vector<double>& energies,
                               double lambda, const ContinuedFraction& cf,
                               std::int64_t n) {
    std::vector<double> out(energies.size());
    const std::int64_t count = static_cast<std::int64_t>(energies.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) {
        out[static_cast<std::size_t>(i)] =
            trace_value(energies[static_cast<std::size_t>(i)], lambda, cf, n);
    }
    return out;
}

IntervalSet interval_union(const IntervalSet& a, const IntervalSet& b) {
    IntervalSet all = a;
    all.insert(all.end(), b.begin(), b.end());
    std::sort(all.begin(), all.end());
    IntervalSet out;
    for (const auto& iv : all) {
        if (!out.empty() && iv.first <= out.back().second) {
            out.back().second = std::fmax(out.back().second, iv.second);
        } else {
            out.push_back(iv);
        }
    }
    return out;
}

IntervalSet interval_intersection(const IntervalSet& a, const IntervalSet& b) {
    IntervalSet out;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const double lo = std::fmax(a[i].first, b[j].first);
        const double hi = std::fmin(a[i].second, b[j].second);
        if (lo <= hi) {
            out.emplace_back(lo, hi);
        }
        if (a[i].second < b[j].second) {
            ++i;
        } else {
            ++j;
        }
    }
    return out;
}

double interval_measure(const IntervalSet& s) {
    double sum = 0.0;
    for (const auto& [l, r] : s) {
        sum += r - l;
    }
    return sum;
}

IntervalSet to_intervals(const BandList& b) {
    IntervalSet out;
    for (std::size_t i = 0; i < b.bands.size(); ++i) {
        if (!out.empty() && b.bands[i - 1].touches_next) {
            out.back().second = b.bands[i].hi;
        } else {
            out.emplace_back(b.bands[i].lo, b.bands[i].hi);
        }
    }
    return out;
}

NestedSpectrum nested_spectrum(double lambda, const ContinuedFraction& cf,
                               std::int64_t n, std::int64_t k, double tol) {
    if (k < 0 || k > n) {
        throw domain_error("nested_spectrum needs 0 <= k <= n");
    }
    NestedSpectrum out;
    out.k = k;
    out.n = n;
    IntervalSet inner; // union over levels k+1..n
    for (std::int64_t level = k; level <= n; ++level) {
        const IntervalSet iv = to_intervals(approx_bands(lambda, cf, level, tol));
        out.raw = interval_union(out.raw, iv);
        if (level > k) {
            inner = interval_union(inner, iv);
        }
    }
    out.refined = interval_intersection(out.raw, inner);
    return out;
}

} // namespace qs
