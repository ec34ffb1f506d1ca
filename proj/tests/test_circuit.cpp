#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pickup/circuit.hpp"
#include "test_support.hpp"

using namespace pickup;

TEST_SUITE_BEGIN("circuit");

TEST_CASE("inductive reactance") {
    CHECK(inductive_reactance(1.0, 0.0) == 0.0);
    CHECK(inductive_reactance(1.0 / (2.0 * std::numbers::pi), 1.0) ==
          doctest::Approx(1.0).epsilon(1e-15));
    // 2*pi*1e4*2.2, evaluated independently at high precision
    CHECK(inductive_reactance(2.2, 1e4) ==
          doctest::Approx(138230.07675795090).epsilon(1e-15));
    CHECK_THROWS_AS(inductive_reactance(0.0, 100.0), std::invalid_argument);
}

TEST_CASE("capacitive reactance") {
    CHECK(capacitive_reactance(1.0 / (2.0 * std::numbers::pi), 1.0) ==
          doctest::Approx(1.0).epsilon(1e-15));
    // 1/(2*pi*1e4*110e-12), evaluated independently at high precision
    CHECK(capacitive_reactance(110e-12, 1e4) ==
          doctest::Approx(144686.31190172303).epsilon(1e-15));
    CHECK_THROWS_AS(capacitive_reactance(1e-9, 0.0), DivergentReactance);
}

TEST_CASE("reactance scaling laws") {
    // X_L linear in f and L; X_C homogeneous of degree -1 in f and C
    const double base_l = inductive_reactance(2.2, 1000.0);
    CHECK(inductive_reactance(2.2, 3000.0) == doctest::Approx(3.0 * base_l).epsilon(1e-14));
    CHECK(inductive_reactance(6.6, 1000.0) == doctest::Approx(3.0 * base_l).epsilon(1e-14));
    const double base_c = capacitive_reactance(100e-12, 1000.0);
    CHECK(capacitive_reactance(100e-12, 4000.0) == doctest::Approx(base_c / 4.0).epsilon(1e-14));
    CHECK(capacitive_reactance(400e-12, 1000.0) == doctest::Approx(base_c / 4.0).epsilon(1e-14));
}

TEST_CASE("series impedance equals R at resonance") {
    const LcrParams params{6000.0, 2.2, 110e-12};
    const double f_res = resonant_frequency(2.2, 110e-12);
    // reactances cancel: |Z| = sqrt(R^2)
    CHECK(impedance_magnitude(params, CircuitTopology::SeriesLcr, f_res) ==
          doctest::Approx(6000.0).epsilon(1e-9));

    const LcrParams lossless{0.0, 2.2, 110e-12};
    CHECK(impedance_magnitude(lossless, CircuitTopology::SeriesLcr, f_res) < 1e-6);

    CHECK_THROWS_AS(impedance_magnitude(params, CircuitTopology::SeriesLcr, 0.0),
                    DivergentReactance);
}

TEST_CASE("series impedance is bounded below by R") {
    const LcrParams params{6000.0, 2.2, 110e-12};
    const double f_res = resonant_frequency(2.2, 110e-12);
    for (double f = 100.0; f < 25000.0; f *= 1.37) {
        CHECK(impedance_magnitude(params, CircuitTopology::SeriesLcr, f) >= 6000.0);
    }
    // equality exactly at resonance
    CHECK(impedance_magnitude(params, CircuitTopology::SeriesLcr, f_res) - 6000.0 <=
          1e-9 * 6000.0);
}

TEST_CASE("series resonance value depends only on R at fixed L*C") {
    const double product = 2.2 * 110e-12;
    for (double k : {0.25, 0.5, 2.0, 7.3}) {
        const double l = 2.2 * k;
        const double c = product / l;
        const LcrParams params{6000.0, l, c};
        const double f_res = resonant_frequency(l, c);
        CHECK(impedance_magnitude(params, CircuitTopology::SeriesLcr, f_res) ==
              doctest::Approx(6000.0).epsilon(1e-9));
    }
}

TEST_CASE("parallel-resonant impedance, pinned value") {
    const LcrParams params{6000.0, 2.2, 110e-12};
    // |(R + jwL)(1/jwC) / (R + jwL + 1/jwC)| at f = 1000, computed with an
    // independent high-precision complex-arithmetic oracle
    CHECK(impedance_magnitude(params, CircuitTopology::ParallelResonant, 1000.0) ==
          doctest::Approx(15214.247335454075).epsilon(1e-13));
    // DC value is R: the capacitor branch is open
    CHECK(impedance_magnitude(params, CircuitTopology::ParallelResonant, 0.0) == 6000.0);
}

TEST_CASE("parallel loss element shunts the network") {
    const LcrParams bare{6000.0, 2.2, 110e-12};
    LcrParams lossy = bare;
    lossy.loss_R_v = 250e3;
    const double f_res = resonant_frequency(2.2, 110e-12);
    const double z_bare = impedance_magnitude(bare, CircuitTopology::ParallelResonant, f_res);
    const double z_lossy = impedance_magnitude(lossy, CircuitTopology::ParallelResonant, f_res);
    CHECK(z_lossy < z_bare);
    // far below resonance the shunt barely matters
    const double lo_bare = impedance_magnitude(bare, CircuitTopology::ParallelResonant, 20.0);
    const double lo_lossy = impedance_magnitude(lossy, CircuitTopology::ParallelResonant, 20.0);
    CHECK(lo_lossy == doctest::Approx(lo_bare).epsilon(0.05));
}

TEST_CASE("resonant frequency") {
    CHECK(resonant_frequency(1.0, 1.0) == doctest::Approx(0.15915494309189534).epsilon(1e-15));
    // 1/(2*pi*sqrt(2.2 * 110e-12)), independent high-precision evaluation
    CHECK(resonant_frequency(2.2, 110e-12) ==
          doctest::Approx(10230.867229058024).epsilon(1e-15));
    CHECK_THROWS_AS(resonant_frequency(0.0, 1e-10), std::invalid_argument);
    CHECK_THROWS_AS(resonant_frequency(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("resonant frequency scaling") {
    // quadrupling L exactly halves f_res
    CHECK(resonant_frequency(4.0 * 2.2, 110e-12) ==
          doctest::Approx(0.5 * resonant_frequency(2.2, 110e-12)).epsilon(1e-15));
    // invariant under (L -> kL, C -> C/k)
    for (double k : {0.1, 0.37, 3.0, 1234.5}) {
        CHECK(resonant_frequency(2.2 * k, 110e-12 / k) ==
              doctest::Approx(resonant_frequency(2.2, 110e-12)).epsilon(1e-12));
    }
}

TEST_CASE("parallel topology peaks at the resonant frequency for high Q") {
    testsupport::Rng rng(20240521);
    int checked = 0;
    while (checked < 20) {
        const LcrParams params = testsupport::random_params(rng);
        if (testsupport::quality_factor(params) <= 10.0) {
            continue;
        }
        ++checked;
        const double f_res = resonant_frequency(params.inductance_L, params.capacitance_C);
        const double f_peak = testsupport::dense_grid_argmax(
            params, CircuitTopology::ParallelResonant, f_res / 4.0, f_res * 4.0, 200001);
        CHECK(std::abs(f_peak - f_res) / f_res < 0.005);
    }
}

TEST_CASE("invalid parameters are rejected") {
    CHECK_THROWS_AS(impedance_magnitude({-1.0, 2.2, 110e-12},
                                        CircuitTopology::ParallelResonant, 100.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(impedance_magnitude({6000.0, 0.0, 110e-12},
                                        CircuitTopology::ParallelResonant, 100.0),
                    std::invalid_argument);
    LcrParams bad_loss{6000.0, 2.2, 110e-12};
    bad_loss.loss_R_v = 0.0;
    CHECK_THROWS_AS(impedance_magnitude(bad_loss, CircuitTopology::ParallelResonant, 100.0),
                    std::invalid_argument);
}

TEST_SUITE_END();
