#pragma once

#include <cstdint>
#include <vector>

#include "quasispec/mat2.hpp"
#include "quasispec/potential.hpp"

namespace qs {

// n-step transfer matrix at energy E:
//   n >= 1: T(n) x ... x T(1),   n = 0: identity,
//   n <= -1: T(n+1)^{-1} x ... x T(0)^{-1},
// with T(j) = elementary_matrix(E, V(j)). det = 1 throughout.
Mat2 transfer(double E, const Potential& V, std::int64_t n);

// Word matrix M_E(a_1...a_n) = M(a_n) x ... x M(a_1) with per-symbol values
// from the coding.
Mat2 word_matrix(double E, const Word& w, const Coding& coding);

// Solution of u(n+1) + u(n-1) + V(n) u(n) = E u(n) on sites lo..hi+1,
// generated from the state (u(1), u(0)) at the origin.
struct SolutionVector {
    std::int64_t lo = 0;       // first site stored
    std::vector<double> u;     // u[i] = value at site lo + i

    [[nodiscard]] double at(std::int64_t n) const;
    // Phi(n) = (u(n+1), u(n)).
    [[nodiscard]] Vec2 state(std::int64_t n) const;
};

SolutionVector solve(double E, const Potential& V, double u1, double u0,
                     std::int64_t lo, std::int64_t hi);

// Finite-n Lyapunov estimate (1/n) ln ||M_E(n)|| with the running product
// renormalized every 32 steps to dodge overflow.
double lyapunov_estimate(double E, const Potential& V, std::int64_t n);

// Estimates over an energy grid; parallel kernel plus the serial reference.
std::vector<double> lyapunov_grid(const std::vector<double>& energies,
                                  const Potential& V, std::int64_t n);
std::vector<double> lyapunov_grid_serial(const std::vector<double>& energies,
                                         const Potential& V, std::int64_t n);

// Interpolated truncated norm over sites 1..L:
// ||u||_L^2 = sum_{n=1}^{floor(L)} u(n)^2 + (L - floor(L)) u(floor(L)+1)^2.
// Requires L >= 1 and the solution to cover sites 1..floor(L)+1.
double truncated_norm(const SolutionVector& u, double L);

// log of the truncated norm, overflow-safe for exponentially growing u.
double log_truncated_norm(const SolutionVector& u, double L);

// ||u1||_L^{2-alpha} / ||u2||_L^alpha for the canonical pair
// u1(0)=0, u1(1)=1 and u2(0)=1, u2(1)=0, evaluated on a grid of lengths.
// Requires every L > 1 (||u2||_1 = 0 identically since u2(1) = 0).
std::vector<double> jl_ratio(double E, const Potential& V, double alpha,
                             const std::vector<double>& L_grid);

} // namespace qs
