#include "quasispec/dynamics.hpp"

#include <cblas.h>
#include <lapacke.h>

#include <cmath>
#include <cstdlib>
#include <string>

#include "quasispec/errors.hpp"

namespace qs {

LatticeHamiltonian build_box(const Potential& V, std::int64_t N) {
    if (N < 0) {
        throw domain_error("box size must be >= 0");
    }
    if (!V.covers(-N, N)) {
        throw domain_error("potential window does not cover -" +
                           std::to_string(N) + ".." + std::to_string(N));
    }
    LatticeHamiltonian H;
    H.N = N;
    H.diag.resize(static_cast<std::size_t>(2 * N + 1));
    for (std::int64_t n = -N; n <= N; ++n) {
        H.diag[static_cast<std::size_t>(n + N)] = V(n);
    }
    return H;
}

BoxEigensystem diagonalize(const LatticeHamiltonian& H) {
    const auto d = static_cast<lapack_int>(H.dim());
    BoxEigensystem eig;
    eig.N = H.N;
    eig.energies = H.diag;
    std::vector<double> off(H.dim() > 1 ? H.dim() - 1 : 0, 1.0);
    eig.Q.assign(H.dim() * H.dim(), 0.0);
    const lapack_int info =
        LAPACKE_dstevd(LAPACK_COL_MAJOR, 'V', d, eig.energies.data(),
                       off.data(), eig.Q.data(), d);
    if (info != 0) {
        throw resolution_error("tridiagonal eigensolver failed, info = " +
                               std::to_string(info));
    }
    return eig;
}

namespace {

// spectral coefficients of psi0: c_j = <v_j, psi0>
std::vector<double> spectral_coeffs(
    const BoxEigensystem& eig,
    const std::vector<std::pair<std::int64_t, double>>& psi0) {
    const std::size_t d = eig.dim();
    double norm2 = 0.0;
    for (const auto& [site, amp] : psi0) {
        if (site < -eig.N || site > eig.N) {
            throw domain_error("initial state touches site " +
                               std::to_string(site) + " outside the box");
        }
        norm2 += amp * amp;
    }
    if (std::fabs(norm2 - 1.0) > 1e-9) {
        throw domain_error("initial state must have unit norm");
    }
    std::vector<double> c(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
        double s = 0.0;
        for (const auto& [site, amp] : psi0) {
            s += amp * eig.Q[static_cast<std::size_t>(site + eig.N) + j * d];
        }
        c[j] = s;
    }
    return c;
}

// amplitude vector at time t in the site basis, split into re/im parts
void evolve_parts(const BoxEigensystem& eig, const std::vector<double>& c,
                  double t, std::vector<double>& re, std::vector<double>& im) {
    const std::size_t d = eig.dim();
    std::vector<double> are(d), aim(d);
    for (std::size_t j = 0; j < d; ++j) {
        are[j] = std::cos(eig.energies[j] * t) * c[j];
        aim[j] = -std::sin(eig.energies[j] * t) * c[j];
    }
    re.assign(d, 0.0);
    im.assign(d, 0.0);
    const auto n = static_cast<blasint>(d);
    cblas_dgemv(CblasColMajor, CblasNoTrans, n, n, 1.0, eig.Q.data(), n,
                are.data(), 1, 0.0, re.data(), 1);
    cblas_dgemv(CblasColMajor, CblasNoTrans, n, n, 1.0, eig.Q.data(), n,
                aim.data(), 1, 0.0, im.data(), 1);
}

inline double sinc(double x) {
    if (std::fabs(x) < 1e-8) {
        return 1.0 - x * x / 6.0;
    }
    return std::sin(x) / x;
}

} // namespace

std::vector<std::complex<double>> evolve_state(const BoxEigensystem& eig,
                                               double t) {
    const std::vector<double> c = spectral_coeffs(eig, {{0, 1.0}});
    std::vector<double> re, im;
    evolve_parts(eig, c, t, re, im);
    std::vector<std::complex<double>> psi(eig.dim());
    for (std::size_t n = 0; n < eig.dim(); ++n) {
        psi[n] = {re[n], im[n]};
    }
    return psi;
}

MomentEngine::MomentEngine(const BoxEigensystem& eig, double p)
    : MomentEngine(eig, p, {{0, 1.0}}) {}

MomentEngine::MomentEngine(
    const BoxEigensystem& eig, double p,
    const std::vector<std::pair<std::int64_t, double>>& psi0)
    : eig_(eig), p_(p) {
    if (p < 0.0) {
        throw domain_error("moment order must be >= 0");
    }
    c_ = spectral_coeffs(eig, psi0);
    const std::size_t d = eig.dim();

    // S = R^T R with R_{nj} = sqrt(|n|^p) Q_{nj}, accumulated in row chunks
    // so the scratch stays small next to the d*d output.
    std::vector<double> S(d * d, 0.0);
    const std::size_t chunk = 1024;
    std::vector<double> R;
    for (std::size_t r0 = 0; r0 < d; r0 += chunk) {
        const std::size_t rows = std::min(chunk, d - r0);
        R.assign(rows * d, 0.0);
        for (std::size_t j = 0; j < d; ++j) {
            for (std::size_t r = 0; r < rows; ++r) {
                const auto site =
                    static_cast<double>(static_cast<std::int64_t>(r0 + r) -
                                        eig.N);
                const double w =
                    p_ == 0.0 ? 1.0 : std::pow(std::fabs(site), p_);
                R[r + j * rows] =
                    std::sqrt(w) * eig.Q[(r0 + r) + j * d];
            }
        }
        cblas_dsyrk(CblasColMajor, CblasUpper, CblasTrans,
                    static_cast<blasint>(d), static_cast<blasint>(rows), 1.0,
                    R.data(), static_cast<blasint>(rows), 1.0, S.data(),
                    static_cast<blasint>(d));
    }
    A_.assign(d * d, 0.0);
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t j = 0; j <= k; ++j) {
            const double a = c_[j] * c_[k] * S[j + k * d];
            A_[j + k * d] = a;
            A_[k + j * d] = a;
        }
    }
}

double MomentEngine::value(double T) const {
    if (!(T > 0.0)) {
        throw domain_error("averaging time must be positive");
    }
    const std::size_t d = eig_.dim();
    const double* E = eig_.energies.data();
    const double* A = A_.data();
    double sum = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : sum)
    for (std::size_t k = 0; k < d; ++k) {
        double local = A[k + k * d];
        for (std::size_t j = 0; j < k; ++j) {
            local += 2.0 * A[j + k * d] * sinc((E[j] - E[k]) * T);
        }
        sum += local;
    }
    return sum;
}

double MomentEngine::value_serial(double T) const {
    if (!(T > 0.0)) {
        throw domain_error("averaging time must be positive");
    }
    const std::size_t d = eig_.dim();
    const double* E = eig_.energies.data();
    const double* A = A_.data();
    double sum = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
        sum += A[k + k * d];
        for (std::size_t j = 0; j < k; ++j) {
            sum += 2.0 * A[j + k * d] * sinc((E[j] - E[k]) * T);
        }
    }
    return sum;
}

double MomentEngine::outer_mass(double t) const {
    std::vector<double> re, im;
    evolve_parts(eig_, c_, t, re, im);
    const std::int64_t cut =
        static_cast<std::int64_t>(std::floor(0.9 * static_cast<double>(eig_.N)));
    double mass = 0.0;
    for (std::size_t r = 0; r < eig_.dim(); ++r) {
        const std::int64_t site = static_cast<std::int64_t>(r) - eig_.N;
        if (std::llabs(site) > cut) {
            mass += re[r] * re[r] + im[r] * im[r];
        }
    }
    return mass;
}

double MomentEngine::unitarity_drift(double t) const {
    std::vector<double> re, im;
    evolve_parts(eig_, c_, t, re, im);
    double norm2 = 0.0;
    for (std::size_t r = 0; r < eig_.dim(); ++r) {
        norm2 += re[r] * re[r] + im[r] * im[r];
    }
    return std::fabs(norm2 - 1.0);
}

MomentCurve evolve_moment(
    const BoxEigensystem& eig, double p, double t_min, double t_max,
    std::size_t n_times,
    const std::vector<std::pair<std::int64_t, double>>& psi0) {
    if (!(t_min > 0.0) || !(t_max > t_min)) {
        throw domain_error("time grid needs 0 < t_min < t_max");
    }
    if (n_times < 2) {
        throw domain_error("time grid needs at least two points");
    }
    const MomentEngine engine(eig, p, psi0);
    MomentCurve curve;
    curve.N = eig.N;
    curve.p = p;
    const double l0 = std::log(t_min);
    const double l1 = std::log(t_max);
    for (std::size_t i = 0; i < n_times; ++i) {
        const double T = std::exp(
            l0 + (l1 - l0) * static_cast<double>(i) /
                     static_cast<double>(n_times - 1));
        MomentSample s;
        s.T = T;
        s.value = engine.value(T);
        s.contaminated = engine.outer_mass(T) > 1e-6;
        curve.samples.push_back(s);
    }
    return curve;
}

MomentCurve evolve_moment(const BoxEigensystem& eig, double p, double t_min,
                          double t_max, std::size_t n_times) {
    return evolve_moment(eig, p, t_min, t_max, n_times, {{0, 1.0}});
}

TransportFit transport_exponent(const MomentCurve& curve, bool strict) {
    const std::size_t n = curve.samples.size();
    if (n < 8) {
        throw domain_error("transport fit needs at least 8 samples");
    }
    double tlo = curve.samples.front().T;
    double thi = tlo;
    bool contaminated = false;
    for (const MomentSample& s : curve.samples) {
        tlo = std::fmin(tlo, s.T);
        thi = std::fmax(thi, s.T);
        if (!(s.value > 0.0)) {
            throw domain_error("transport fit needs positive moment values");
        }
        contaminated = contaminated || s.contaminated;
    }
    if (std::log10(thi / tlo) < 1.0 - 1e-9) {
        throw domain_error("transport fit needs samples spanning at least a "
                           "decade in T");
    }
    if (contaminated && strict) {
        throw contaminated_error(
            "moment samples reach the outer 10% of the box; enlarge N or "
            "shrink t_max");
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const MomentSample& s : curve.samples) {
        const double x = std::log(s.T);
        const double y = std::log(s.value);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double dn = static_cast<double>(n);
    const double denom = dn * sxx - sx * sx;
    TransportFit fit;
    fit.exponent = (dn * sxy - sx * sy) / denom;
    const double intercept = (sy - fit.exponent * sx) / dn;
    double ss = 0.0;
    for (const MomentSample& s : curve.samples) {
        const double r =
            std::log(s.value) - fit.exponent * std::log(s.T) - intercept;
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / dn);
    fit.contaminated = contaminated;
    return fit;
}

} // namespace qs
