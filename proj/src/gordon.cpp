#include "quasispec/gordon.hpp"

#include <cmath>

#include "quasispec/errors.hpp"
#include "quasispec/partition.hpp"
#include "quasispec/transfer.hpp"

namespace qs {

namespace {

// e1, e2 and 16 low-discrepancy unit vectors (angles from the base-2
// radical-inverse sequence): the lemmas hold for every initial state, the
// sampling is a spot check on top of the algebraic residual.
std::vector<Vec2> sample_states() {
    std::vector<Vec2> states = {{1.0, 0.0}, {0.0, 1.0}};
    for (int i = 1; i <= 16; ++i) {
        double v = 0.0;
        double base = 0.5;
        for (int bits = i; bits > 0; bits >>= 1) {
            if (bits & 1) {
                v += base;
            }
            base *= 0.5;
        }
        const double theta = 2.0 * 3.14159265358979323846 * v;
        states.push_back({std::cos(theta), std::sin(theta)});
    }
    return states;
}

} // namespace

bool check_square(const Potential& V, std::int64_t n, std::int64_t offset) {
    if (n < 1) {
        throw domain_error("square check needs n >= 1");
    }
    if (!V.covers(offset + 1, offset + 2 * n)) {
        throw domain_error("square check needs the window " +
                           std::to_string(offset + 1) + ".." +
                           std::to_string(offset + 2 * n));
    }
    for (std::int64_t j = 1; j <= n; ++j) {
        if (V(offset + j) != V(offset + j + n)) {
            return false;
        }
    }
    return true;
}

bool check_cube(const Potential& V, std::int64_t n, std::int64_t offset) {
    if (n < 1) {
        throw domain_error("cube check needs n >= 1");
    }
    if (!V.covers(offset - n + 1, offset + 2 * n)) {
        throw domain_error("cube check needs the window " +
                           std::to_string(offset - n + 1) + ".." +
                           std::to_string(offset + 2 * n));
    }
    for (std::int64_t j = 1; j <= n; ++j) {
        const double mid = V(offset + j);
        if (V(offset + j - n) != mid || mid != V(offset + j + n)) {
            return false;
        }
    }
    return true;
}

GordonCertificate two_block_bound(double E, const Potential& V,
                                  std::int64_t n, double C) {
    if (!(C >= 1.0)) {
        throw domain_error("two-block bound needs C >= 1");
    }
    if (!check_square(V, n, 0)) {
        throw consistency_error(
            "two-block certificate needs the square V(j) = V(j+n), j = 1.." +
            std::to_string(n) + ", at the origin");
    }
    const Mat2 M = transfer(E, V, n);
    const double t = M.trace();
    if (std::fabs(t) > C) {
        throw consistency_error("two-block trace condition fails: |tr| = " +
                                std::to_string(std::fabs(t)) +
                                " exceeds C = " + std::to_string(C) +
                                "; rerun with a larger C");
    }
    const Mat2 M2 = transfer(E, V, 2 * n);

    GordonCertificate cert;
    cert.n = n;
    cert.offset = 0;
    cert.trace = t;
    cert.bound = 0.5 * std::fmin(1.0, 1.0 / std::fabs(t));
    cert.ch_residual =
        (M2 - M * t + Mat2::identity()).frobenius();
    double worst = -1.0;
    for (const Vec2& v : sample_states()) {
        const double reach = std::fmax((M * v).norm(), (M2 * v).norm());
        if (worst < 0.0 || reach < worst) {
            worst = reach;
        }
    }
    cert.attained = worst;
    cert.ok = cert.attained >= cert.bound - 1e-9;
    return cert;
}

GordonCertificate three_block_bound(double E, const Potential& V,
                                    std::int64_t n) {
    if (!check_cube(V, n, 0)) {
        throw consistency_error(
            "three-block certificate needs the cube V(j-n) = V(j) = V(j+n), "
            "j = 1.." +
            std::to_string(n) + ", at the origin");
    }
    const Mat2 M = transfer(E, V, n);
    const Mat2 M2 = transfer(E, V, 2 * n);
    const Mat2 Mneg = transfer(E, V, -n);

    GordonCertificate cert;
    cert.n = n;
    cert.offset = 0;
    cert.trace = M.trace();
    cert.bound = 0.5;
    cert.ch_residual =
        (M2 - M * M.trace() + Mat2::identity()).frobenius();
    double worst = -1.0;
    for (const Vec2& v : sample_states()) {
        const double reach = std::fmax(
            (Mneg * v).norm(), std::fmax((M * v).norm(), (M2 * v).norm()));
        if (worst < 0.0 || reach < worst) {
            worst = reach;
        }
    }
    cert.attained = worst;
    cert.ok = cert.attained >= cert.bound - 1e-9;
    return cert;
}

std::vector<RepeatHit> scan_gordon_scales(const Word& w,
                                          const ContinuedFraction& cf,
                                          std::int64_t n_max) {
    if (n_max < 1) {
        throw domain_error("scan needs n_max >= 1");
    }
    const std::int64_t len = static_cast<std::int64_t>(w.size());
    if (len < 4 * cf.qn(n_max)) {
        throw domain_error("scan needs |w| >= 4 q_{n_max}");
    }
    std::vector<RepeatHit> hits;
    for (std::int64_t level = 1; level <= n_max; ++level) {
        const std::int64_t qn = cf.qn(level);
        const PartitionView pv = n_partition(w, cf, level);
        for (const PartitionRun& run : pv.runs) {
            if (!run.is_sn || run.multiplicity < 2) {
                continue;
            }
            const auto mult = static_cast<std::int64_t>(run.multiplicity);
            // adjacent equal blocks inside the run: copies j and j+1 give a
            // square, copies j..j+2 a centered cube around the middle one
            for (std::int64_t j = 0; j + 1 < mult; ++j) {
                const std::int64_t pos = run.start + j * qn; // 1-based
                const std::int64_t offset = pos - 1;
                if (offset + 2 * qn <= len) {
                    hits.push_back({level, qn, offset, RepeatKind::square});
                }
                if (j + 2 < mult) {
                    const std::int64_t coffset = offset + qn;
                    if (coffset + 2 * qn <= len) {
                        hits.push_back({level, qn, coffset, RepeatKind::cube});
                    }
                }
            }
        }
    }
    return hits;
}

FrequencyBound frequency_lower_bound(const Word& w, const Word& v,
                                     std::size_t k) {
    if (k != 3 && k != 4) {
        throw domain_error("frequency bound is defined for cubes and fourth "
                           "powers (k = 3 or 4)");
    }
    if (v.empty()) {
        throw domain_error("frequency bound needs a nonempty block");
    }
    if (!(v.alphabet() == w.alphabet())) {
        throw domain_error("frequency bound needs matching alphabets");
    }
    FrequencyBound out;
    if (k * v.size() > w.size()) {
        return out; // the power cannot occur in a shorter word
    }
    std::string rep;
    rep.reserve(k * v.size());
    for (std::size_t i = 0; i < k; ++i) {
        rep += v.letters();
    }
    const Word vk(w.alphabet(), rep);
    const std::int64_t cnt = occurrence_count(w, vk);
    out.present = cnt > 0;
    out.value = static_cast<double>(v.size()) * static_cast<double>(cnt) /
                static_cast<double>(w.size() - vk.size() + 1);
    return out;
}

} // namespace qs
