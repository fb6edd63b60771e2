#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "quasispec/potential.hpp"

namespace qs {

// H restricted to sites -N..N with Dirichlet cut: symmetric tridiagonal,
// diagonal V(n), off-diagonal 1.
struct LatticeHamiltonian {
    std::int64_t N = 0;
    std::vector<double> diag; // size 2N+1, site n at index n+N

    [[nodiscard]] std::size_t dim() const { return diag.size(); }
};

LatticeHamiltonian build_box(const Potential& V, std::int64_t N);

// Full eigendecomposition H = Q diag(E) Q^T (LAPACK dstevd).
struct BoxEigensystem {
    std::int64_t N = 0;
    std::vector<double> energies; // ascending, size d
    std::vector<double> Q;        // column-major d x d, Q[n + j*d]

    [[nodiscard]] std::size_t dim() const { return energies.size(); }
};

BoxEigensystem diagonalize(const LatticeHamiltonian& H);

// psi(t) = exp(-i t H) psi0 for psi0 = delta_0 (site 0).
std::vector<std::complex<double>> evolve_state(const BoxEigensystem& eig,
                                               double t);

// Time-averaged moment machinery. The Cesaro average over [0, T] of
// |<n|psi(t)>|^2 is evaluated analytically: cross terms pick up the kernel
//   K_T(w) = (1 - e^{-iwT}) / (iwT),  K_T(0) = 1,
// whose real part sinc(wT) is all that survives the real symmetric sum.
// The O(d^3) pair-weight matrix is precomputed once per (p, psi0).
class MomentEngine {
  public:
    // p >= 0; psi0 = delta_0.
    MomentEngine(const BoxEigensystem& eig, double p);
    // Finitely supported real psi0 as (site, amplitude) pairs; must have
    // unit norm, sites within -N..N.
    MomentEngine(const BoxEigensystem& eig, double p,
                 const std::vector<std::pair<std::int64_t, double>>& psi0);

    // <<|X|^p>>(T); T > 0.
    [[nodiscard]] double value(double T) const;        // OpenMP kernel
    [[nodiscard]] double value_serial(double T) const; // reference

    // Total |psi(t)|^2 in the outer 10% of sites at time t.
    [[nodiscard]] double outer_mass(double t) const;
    // |  ||psi(t)||^2 - 1 |, a unitarity drift probe.
    [[nodiscard]] double unitarity_drift(double t) const;

  private:
    const BoxEigensystem& eig_;
    double p_;
    std::vector<double> c_; // spectral coefficients of psi0
    std::vector<double> A_; // column-major d x d: c_j c_k sum_n w_n Q_nj Q_nk
};

struct MomentSample {
    double T = 0.0;
    double value = 0.0;
    bool contaminated = false; // outer 10% of sites carry mass > 1e-6
};

struct MomentCurve {
    std::int64_t N = 0;
    double p = 2.0;
    std::vector<MomentSample> samples;
};

// Moments on a log-spaced grid of times T in [t_min, t_max].
MomentCurve evolve_moment(const BoxEigensystem& eig, double p, double t_min,
                          double t_max, std::size_t n_times);
MomentCurve evolve_moment(
    const BoxEigensystem& eig, double p, double t_min, double t_max,
    std::size_t n_times,
    const std::vector<std::pair<std::int64_t, double>>& psi0);

struct TransportFit {
    double exponent = 0.0; // least-squares slope of log value vs log T
    double residual = 0.0; // rms residual of the fit
    bool contaminated = false;
};

// Fits log<<|X|^p>> ~ beta log T + c. With strict = true a contaminated
// sample raises contaminated_error; otherwise it is only flagged.
TransportFit transport_exponent(const MomentCurve& curve, bool strict = false);

} // namespace qs
