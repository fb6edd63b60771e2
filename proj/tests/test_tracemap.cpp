#include "doctest.h"

#include <cmath>
#include <random>

#include "quasispec/tracemap.hpp"
#include "quasispec/transfer.hpp"

using namespace qs;

namespace {

ContinuedFraction golden(std::size_t depth = 30) {
    return continued_fraction(parse_alpha_spec("golden"), depth);
}

ContinuedFraction silver(std::size_t depth = 30) {
    return continued_fraction(parse_alpha_spec("silver"), depth);
}

// direct trace of tr M(S^n(seed word)) via plain matrix products
double direct_trace(double E, double lambda, const SubstitutionRule& rule,
                    const std::string& seed, int n) {
    Word w(rule.alphabet, seed);
    for (int i = 0; i < n; ++i)
        w = apply_substitution(rule, w);
    std::map<char, double> coding{{rule.alphabet.symbols()[0], 0.0},
                                  {rule.alphabet.symbols()[1], lambda}};
    Mat2 m = Mat2::identity();
    for (char c : w.letters())
        m = elementary_matrix(E, coding.at(c)) * m;
    return m.trace();
}

} // namespace

TEST_SUITE("tracemap") {

TEST_CASE("orbit seeds") {
    const auto cf = golden();
    const TraceOrbit orbit = sturmian_traces(0.7, 1.9, cf, 0);
    CHECK(orbit.x(-1) == doctest::Approx(0.7 - 1.9).epsilon(1e-12));
    CHECK(orbit.x(0) == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(orbit.max_level() == 0);
    CHECK_THROWS_AS(orbit.x(1), domain_error);
    CHECK_THROWS_AS(orbit.x(-2), domain_error);
    CHECK(trace_value(0.7, 1.9, cf, 0) == doctest::Approx(0.7).epsilon(1e-12));
    CHECK_THROWS_AS(trace_value(0.7, 1.9, cf, -1), domain_error);
    CHECK_THROWS_AS(sturmian_traces(0.7, 1.9, cf, 31), domain_error);
}

TEST_CASE("frozen golden-mean traces") {
    // brute-force word-matrix references: tests/oracles/trace_oracle.py
    const auto cf = golden();
    const TraceOrbit a = sturmian_traces(0.5, 1.0, cf, 8);
    CHECK(a.x(1) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(a.x(2) == doctest::Approx(-2.25).epsilon(1e-12));
    CHECK(a.x(3) == doctest::Approx(0.625).epsilon(1e-12));
    CHECK(a.x(4) == doctest::Approx(-0.90625).epsilon(1e-12));
    CHECK(a.x(5) == doctest::Approx(1.68359375).epsilon(1e-12));
    CHECK(a.x(6) == doctest::Approx(-2.150756835938).epsilon(1e-10));
    CHECK(a.x(8) == doctest::Approx(4.155175019463).epsilon(1e-10));
    CHECK(!a.saturated);
    CHECK(!a.escape_index.has_value()); // never past 5 = trace_bound(1)

    CHECK(trace_value(0.0, 4.0, cf, 6) ==
          doctest::Approx(1120.0).epsilon(1e-10));
    CHECK(trace_value(2.5, 0.5, cf, 10) ==
          doctest::Approx(1.071843614120e16).epsilon(1e-9));
}

TEST_CASE("frozen silver-mean traces") {
    const auto cf = silver();
    CHECK(trace_value(0.5, 1.0, cf, 8) ==
          doctest::Approx(8.156861470584e2).epsilon(1e-10));
    CHECK(trace_value(0.0, 4.0, cf, 4) ==
          doctest::Approx(-6.955200000000e4).epsilon(1e-10));
    CHECK(trace_value(2.5, 0.5, cf, 6) ==
          doctest::Approx(1.548174246469e38).epsilon(1e-9));
}

TEST_CASE("golden orbit obeys the scalar three-term recursion") {
    const auto cf = golden();
    for (double E : {-1.7, 0.0, 0.5, 2.3}) {
        const TraceOrbit orbit = sturmian_traces(E, 1.0, cf, 12);
        for (std::int64_t n = 2; n + 1 <= orbit.max_level(); ++n) {
            const double expect =
                fibonacci_step(orbit.x(n), orbit.x(n - 1), orbit.x(n - 2));
            CHECK(orbit.x(n + 1) ==
                  doctest::Approx(expect)
                      .epsilon(1e-9)
                      .scale(std::fabs(expect) + 1.0));
        }
    }
}

TEST_CASE("trace bound") {
    CHECK(trace_bound(0.0) == doctest::Approx(2.0 + std::sqrt(8.0)));
    CHECK(trace_bound(1.0) == doctest::Approx(5.0));
    CHECK(trace_bound(4.0) == doctest::Approx(2.0 + std::sqrt(24.0)));
}

TEST_CASE("escape metadata far off the spectrum") {
    const auto cf = golden();
    const TraceOrbit orbit = sturmian_traces(10.0, 1.0, cf, 25);
    CHECK(orbit.saturated);
    CHECK(orbit.values.size() < 27); // truncated at the clamp
    CHECK(orbit.escape_index.has_value());
    CHECK(*orbit.escape_index <= 3);
    CHECK(std::fabs(orbit.values.back()) == kTraceClamp);
    // custom bound: huge threshold hides the escape flag
    const TraceOrbit high = sturmian_traces(3.0, 1.0, cf, 6, 1e9);
    CHECK(high.bound_used == 1e9);
    CHECK(!high.escape_index.has_value());
}

TEST_CASE("compiled Fibonacci map is the classical polynomial triple") {
    const TraceMapStep step(builtin_substitution("fibonacci"));
    CHECK(step.px().to_string() == "z");
    CHECK(step.py().to_string() == "x");
    CHECK(step.pz().to_string() == "x*z - y");
    const TraceState2 s{0.3, -1.2, 2.0};
    const TraceState2 t = step.apply(s);
    CHECK(t.x == doctest::Approx(2.0));
    CHECK(t.y == doctest::Approx(0.3));
    CHECK(t.z == doctest::Approx(0.3 * 2.0 - (-1.2)));
}

TEST_CASE("compiled maps track direct matrix traces") {
    std::mt19937 rng(91);
    std::uniform_real_distribution<double> energy(-1.2, 1.2);
    std::uniform_real_distribution<double> coupling(0.2, 1.1);
    for (const char* name :
         {"fibonacci", "period-doubling", "binary-non-pisot"}) {
        const SubstitutionRule rule = builtin_substitution(name);
        const TraceMapStep step(rule);
        for (int rep = 0; rep < 5; ++rep) {
            const double E = energy(rng);
            const double lam = coupling(rng);
            std::map<char, double> coding{{'a', 0.0}, {'b', lam}};
            TraceState2 s = seed_trace_state(E, rule, coding);
            for (int n = 1; n <= 6; ++n) {
                s = step.apply(s);
                const double dx = direct_trace(E, lam, rule, "a", n);
                const double dy = direct_trace(E, lam, rule, "b", n);
                const double dz = direct_trace(E, lam, rule, "ab", n);
                const double scale =
                    1.0 + std::fabs(dx) + std::fabs(dy) + std::fabs(dz);
                CHECK(s.x == doctest::Approx(dx).epsilon(1e-9).scale(scale));
                CHECK(s.y == doctest::Approx(dy).epsilon(1e-9).scale(scale));
                CHECK(s.z == doctest::Approx(dz).epsilon(1e-9).scale(scale));
            }
        }
    }
}

TEST_CASE("frozen period-doubling traces") {
    const SubstitutionRule rule = builtin_substitution("period-doubling");
    const TraceMapStep step(rule);
    const auto level5 = [&](double E, double lam) {
        TraceState2 s = seed_trace_state(E, rule, {{'a', 0.0}, {'b', lam}});
        for (int n = 0; n < 5; ++n)
            s = step.apply(s);
        return s.x; // tr M(S^5(a))
    };
    CHECK(level5(1.0, 1.0) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(level5(-0.5, 2.0) ==
          doctest::Approx(-1.555963144405).epsilon(1e-10));
}

TEST_CASE("non-binary rules are rejected") {
    CHECK_THROWS_AS(TraceMapStep(builtin_substitution("rudin-shapiro")),
                    domain_error);
    CHECK_THROWS_AS(
        trace_triple_step(builtin_substitution("rudin-shapiro"), {}),
        domain_error);
    CHECK_THROWS_AS(seed_trace_state(1.0, builtin_substitution("fibonacci"),
                                     {{'a', 0.0}}),
                    domain_error);
    CHECK_NOTHROW(TraceMapStep(builtin_substitution("thue-morse")));
}

TEST_CASE("Poly3 arithmetic and rendering") {
    Poly3 p;
    p.add({2, 1, 0}, 2.0);
    p.add({0, 0, 1}, -1.0);
    p.add({0, 0, 0}, 3.0);
    CHECK(p.to_string() == "2*x^2*y - z + 3");
    CHECK(p.eval(1.0, 2.0, 3.0) == doctest::Approx(4.0));
    // (x + y)^2 = x^2 + 2xy + y^2
    Poly3 xy = Poly3::variable(0);
    xy += Poly3::variable(1);
    const Poly3 sq = xy.times(xy);
    CHECK(sq.eval(0.5, -0.25, 9.0) ==
          doctest::Approx(0.0625));
    CHECK(sq.terms().size() == 3);
    Poly3 zero = Poly3::variable(2);
    zero -= Poly3::variable(2);
    CHECK(zero.to_string() == "0");
    CHECK(Poly3::constant(0.0).terms().empty());
}

TEST_CASE("Fricke trace identity on random unimodular triples") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> val(-2.0, 2.0);
    auto rand_unimodular = [&] {
        Mat2 m = Mat2::identity();
        for (int i = 0; i < 4; ++i)
            m = elementary_matrix(val(rng), val(rng)) * m;
        return m;
    };
    for (int rep = 0; rep < 200; ++rep) {
        const Mat2 M = rand_unimodular();
        const Mat2 N = rand_unimodular();
        const Mat2 O = rand_unimodular();
        const double scale = M.norm2() * M.norm2() * N.norm2() * O.norm2();
        CHECK(trace_identity_check(M, N, O) <= 1e-12 * (1.0 + scale));
    }
    const Mat2 stretch{2.0, 0.0, 0.0, 1.0}; // det = 2
    CHECK_THROWS_AS(
        trace_identity_check(stretch, Mat2::identity(), Mat2::identity()),
        domain_error);
}

TEST_CASE("energy classification") {
    const auto cf = golden();
    // free case: traces are 2 cos(q_n theta), never past 2 + sqrt(8)
    const Classification in = classify_energy(1.0, 0.0, cf, 12);
    CHECK(in.result == EnergyClass::undecided_in);
    CHECK(in.level == 12);
    const Classification out = classify_energy(3.0, 0.0, cf, 12);
    CHECK(out.result == EnergyClass::certified_out);
    CHECK(out.level <= 3);
    const Classification far = classify_energy(10.0, 1.0, cf, 25);
    CHECK(far.result == EnergyClass::certified_out);
    CHECK_THROWS_AS(classify_energy(1.0, 1.0, cf, 31), domain_error);
    // certificates are stable under a deeper N_max
    const Classification deeper = classify_energy(3.0, 0.0, cf, 25);
    CHECK(deeper.result == EnergyClass::certified_out);
    CHECK(deeper.level == out.level);
}

TEST_CASE("parallel classification matches the serial reference") {
    const auto cf = golden();
    std::vector<double> grid;
    for (int i = 0; i <= 160; ++i)
        grid.push_back(-4.0 + 10.0 * i / 160.0);
    const auto par = classify_grid(grid, 1.0, cf, 15);
    const auto ser = classify_grid_serial(grid, 1.0, cf, 15);
    REQUIRE(par.size() == ser.size());
    std::size_t out_count = 0;
    for (std::size_t i = 0; i < par.size(); ++i) {
        CHECK(par[i].result == ser[i].result);
        CHECK(par[i].level == ser[i].level);
        out_count += par[i].result == EnergyClass::certified_out ? 1 : 0;
    }
    CHECK(out_count > 60); // most of [-4, 6.25] is off-spectrum
}

} // TEST_SUITE
