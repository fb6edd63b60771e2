#include "doctest.h"

#include <cmath>

#include "quasispec/bands.hpp"

using namespace qs;

namespace {

ContinuedFraction golden(std::size_t depth = 25) {
    return continued_fraction(parse_alpha_spec("golden"), depth);
}

} // namespace

TEST_SUITE("bands") {

TEST_CASE("frozen golden lambda = 2 band data") {
    // reference edges/measures: tests/oracles/band_gordon_dynamics_oracle.py
    const auto cf = golden();
    const BandList l3 = approx_bands(2.0, cf, 3, 1e-9);
    REQUIRE(l3.bands.size() == 3); // q_3
    CHECK(l3.bands[0].lo == doctest::Approx(-1.0).epsilon(1e-8));
    CHECK(l3.bands[0].hi == doctest::Approx(-0.5615528128).epsilon(1e-8));
    CHECK(l3.bands[1].lo == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(l3.bands[1].hi == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(l3.bands[2].lo == doctest::Approx(3.0).epsilon(1e-8));
    CHECK(l3.bands[2].hi == doctest::Approx(3.5615528128).epsilon(1e-8));
    CHECK(l3.measure() == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(!l3.bands[0].touches_next);
    CHECK(!l3.bands[1].touches_next);

    const BandList l4 = approx_bands(2.0, cf, 4, 1e-9);
    REQUIRE(l4.bands.size() == 5);
    CHECK(l4.measure() == doctest::Approx(1.426931562310).epsilon(1e-8));
    const BandList l5 = approx_bands(2.0, cf, 5, 1e-9);
    REQUIRE(l5.bands.size() == 8);
    CHECK(l5.measure() == doctest::Approx(1.075355055675).epsilon(1e-8));
    const BandList l6 = approx_bands(2.0, cf, 6, 1e-9);
    REQUIRE(l6.bands.size() == 13);
    CHECK(l6.measure() == doctest::Approx(0.7893326107777).epsilon(1e-8));

    // band sets live inside the a-priori box
    const auto [lo, hi] = spectrum_bounds(2.0);
    CHECK(lo == -2.0);
    CHECK(hi == 4.0);
    for (const Band& b : l6.bands) {
        CHECK(b.lo >= lo);
        CHECK(b.hi <= hi);
        CHECK(b.lo <= b.hi);
    }
}

TEST_CASE("free case: touching bands fuse into [-2, 2]") {
    const auto cf = golden();
    const BandList free6 = approx_bands(0.0, cf, 6, 1e-9);
    REQUIRE(free6.bands.size() == 13);
    for (std::size_t i = 0; i + 1 < free6.bands.size(); ++i)
        CHECK(free6.bands[i].touches_next);
    const IntervalSet iv = to_intervals(free6);
    REQUIRE(iv.size() == 1);
    CHECK(iv[0].first == doctest::Approx(-2.0).epsilon(1e-9));
    CHECK(iv[0].second == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(free6.measure() == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(free6.contains(0.37));
    CHECK(!free6.contains(2.1));
}

TEST_CASE("contains matches gaps") {
    const auto cf = golden();
    const BandList l4 = approx_bands(2.0, cf, 4, 1e-9);
    for (const Band& b : l4.bands) {
        CHECK(l4.contains(0.5 * (b.lo + b.hi)));
        CHECK(l4.contains(b.lo));
        CHECK(l4.contains(b.hi));
    }
    for (std::size_t i = 0; i + 1 < l4.bands.size(); ++i) {
        if (!l4.bands[i].touches_next) {
            const double gap =
                0.5 * (l4.bands[i].hi + l4.bands[i + 1].lo);
            CHECK(!l4.contains(gap));
        }
    }
    CHECK(!l4.contains(-5.0));
    CHECK(!l4.contains(5.0));
}

TEST_CASE("band measures shrink with the level") {
    const auto cf = golden();
    double prev = 1e9;
    for (std::int64_t n = 3; n <= 9; ++n) {
        const double m = band_measure(approx_bands(2.0, cf, n, 1e-9));
        CHECK(m < prev + 1e-9);
        prev = m;
    }
    CHECK(prev < 0.5); // level 9 well below the level-3 measure of 2
}

TEST_CASE("preconditions") {
    const auto cf = golden(8);
    CHECK_THROWS_AS(approx_bands(2.0, cf, -1, 1e-9), domain_error);
    CHECK_THROWS_AS(approx_bands(2.0, cf, 9, 1e-9), domain_error);
    CHECK_THROWS_AS(approx_bands(2.0, cf, 4, 0.0), domain_error);
    CHECK_THROWS_AS(nested_spectrum(2.0, cf, 5, 6, 1e-9), domain_error);
    CHECK_THROWS_AS(nested_spectrum(2.0, cf, 5, -1, 1e-9), domain_error);
}

TEST_CASE("interval set algebra") {
    const IntervalSet a{{0.0, 1.0}, {2.0, 3.0}};
    const IntervalSet b{{0.5, 2.5}, {4.0, 5.0}};
    const IntervalSet u = interval_union(a, b);
    REQUIRE(u.size() == 2);
    CHECK(u[0].first == 0.0);
    CHECK(u[0].second == 3.0);
    CHECK(u[1].first == 4.0);
    CHECK(u[1].second == 5.0);
    CHECK(interval_measure(u) == doctest::Approx(4.0));
    const IntervalSet x = interval_intersection(a, b);
    REQUIRE(x.size() == 2);
    CHECK(x[0].first == 0.5);
    CHECK(x[0].second == 1.0);
    CHECK(x[1].first == 2.0);
    CHECK(x[1].second == 2.5);
    CHECK(interval_measure(x) == doctest::Approx(1.0));
    CHECK(interval_union({}, {}).empty());
    CHECK(interval_intersection(a, {}).empty());
    // touching intervals merge
    const IntervalSet t = interval_union({{0.0, 1.0}}, {{1.0, 2.0}});
    REQUIRE(t.size() == 1);
    CHECK(t[0].second == 2.0);
}

TEST_CASE("nested covering refines downward") {
    const auto cf = golden();
    const NestedSpectrum nest = nested_spectrum(2.0, cf, 7, 3, 1e-9);
    CHECK(nest.k == 3);
    CHECK(nest.n == 7);
    CHECK(interval_measure(nest.refined) <=
          interval_measure(nest.raw) + 1e-12);
    // refined is contained in raw
    const IntervalSet back = interval_intersection(nest.refined, nest.raw);
    CHECK(interval_measure(back) ==
          doctest::Approx(interval_measure(nest.refined)).epsilon(1e-12));
    // every level's band set is inside raw
    for (std::int64_t n = 3; n <= 7; ++n) {
        const IntervalSet iv =
            to_intervals(approx_bands(2.0, cf, n, 1e-9));
        const IntervalSet cap = interval_intersection(iv, nest.raw);
        CHECK(interval_measure(cap) ==
              doctest::Approx(interval_measure(iv)).epsilon(1e-12));
    }
}

TEST_CASE("trace grid kernels agree and match pointwise evaluation") {
    const auto cf = golden();
    std::vector<double> grid;
    for (int i = 0; i <= 300; ++i)
        grid.push_back(-2.5 + 7.0 * i / 300.0);
    const auto par = trace_grid(grid, 2.0, cf, 12);
    const auto ser = trace_grid_serial(grid, 2.0, cf, 12);
    REQUIRE(par.size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(par[i] == ser[i]);
        CHECK(par[i] == trace_value(grid[i], 2.0, cf, 12));
    }
}

TEST_CASE("band energies keep small traces, gap energies do not") {
    const auto cf = golden();
    const BandList l8 = approx_bands(2.0, cf, 8, 1e-9);
    for (const Band& b : l8.bands) {
        const double mid = 0.5 * (b.lo + b.hi);
        CHECK(std::fabs(trace_value(mid, 2.0, cf, 8)) <= 2.0 + 1e-6);
    }
}

} // TEST_SUITE
