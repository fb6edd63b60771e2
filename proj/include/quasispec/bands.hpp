#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "quasispec/contfrac.hpp"
#include "quasispec/tracemap.hpp"

namespace qs {

struct Band {
    double lo = 0.0, hi = 0.0;
    bool touches_next = false; // shares its right endpoint with band i+1

    [[nodiscard]] double length() const { return hi - lo; }
};

// sigma(H_n) = {E : |x_n(E)| <= 2} resolved into exactly q_n closed bands,
// sorted. Touching bands keep separate intervals with a snapped shared
// endpoint.
struct BandList {
    std::int64_t level = 0;
    double lambda = 0.0;
    double tol = 0.0;
    std::vector<Band> bands;

    [[nodiscard]] double measure() const;
    [[nodiscard]] bool contains(double E) const;
};

// [-2 + min V, 2 + max V]: contains sigma(H) and every level-n band set.
std::pair<double, double> spectrum_bounds(double lambda);

// Level-n periodic-approximant bands. Edges are the eigenvalues of the
// periodic/antiperiodic q_n-site approximants (x_n = +-2 exactly there);
// gaps narrower than `tol` are snapped shut (touching bands). For q_n >
// 2000 (past dense eigensolvers) an adaptive trace scan takes over: zeros
// of x_n anchor the bands, edges by bisection; it throws resolution_error
// if refinement cannot exhibit q_n zeros.
BandList approx_bands(double lambda, const ContinuedFraction& cf,
                      std::int64_t n, double tol);

double band_measure(const BandList& bands);

// x_n(E) on a grid of energies; parallel kernel plus the serial reference.
std::vector<double> trace_grid(const std::vector<double>& energies,
                               double lambda, const ContinuedFraction& cf,
                               std::int64_t n);
std::vector<double> trace_grid_serial(const std::vector<double>& energies,
                                      double lambda,
                                      const ContinuedFraction& cf,
                                      std::int64_t n);

// Closed-interval sets (sorted, non-overlapping interiors).
using IntervalSet = std::vector<std::pair<double, double>>;

IntervalSet interval_union(const IntervalSet& a, const IntervalSet& b);
IntervalSet interval_intersection(const IntervalSet& a, const IntervalSet& b);
double interval_measure(const IntervalSet& s);
IntervalSet to_intervals(const BandList& b);

// Finite-stage proxy for the nested spectral covering:
//   raw     = union of band sets over levels k..n,
//   refined = raw intersected with the union over levels k+1..n.
struct NestedSpectrum {
    std::int64_t k = 0, n = 0;
    IntervalSet raw;
    IntervalSet refined;
};

NestedSpectrum nested_spectrum(double lambda, const ContinuedFraction& cf,
                               std::int64_t n, std::int64_t k, double tol);

} // namespace qs
