#include <doctest.h>

#include <sstream>

#include "pickup/io/coefficient_file.hpp"
#include "pickup/io/spectrum_csv.hpp"
#include "pickup/io/svg_plot.hpp"
#include "pickup/synth.hpp"
#include "test_support.hpp"

using namespace pickup;

namespace {

ImpedanceSpectrum random_spectrum(testsupport::Rng& rng) {
    ImpedanceSpectrum spectrum;
    const int n = 2 + static_cast<int>(rng.uniform(0.0, 40.0));
    double f = rng.log_uniform(1.0, 100.0);
    for (int i = 0; i < n; ++i) {
        spectrum.samples.push_back(
            {f, {rng.uniform(-1e7, 1e7), rng.uniform(-1e7, 1e7)}});
        f *= rng.uniform(1.01, 3.0);
    }
    const int n_meta = static_cast<int>(rng.uniform(0.0, 4.0));
    for (int i = 0; i < n_meta; ++i) {
        spectrum.metadata["key" + std::to_string(i)] =
            "value " + std::to_string(rng.uniform(0.0, 1e6));
    }
    return spectrum;
}

/// Minimal well-formedness scan: every opened tag is closed in order.
bool tags_balanced(const std::string& svg) {
    std::vector<std::string> stack;
    std::size_t pos = 0;
    while ((pos = svg.find('<', pos)) != std::string::npos) {
        const std::size_t end = svg.find('>', pos);
        if (end == std::string::npos) {
            return false;
        }
        std::string tag = svg.substr(pos + 1, end - pos - 1);
        pos = end + 1;
        if (tag.empty() || tag[0] == '?' || tag[0] == '!') {
            continue;
        }
        if (tag.back() == '/') {
            continue;  // self-closing
        }
        if (tag[0] == '/') {
            if (stack.empty()) {
                return false;
            }
            if (stack.back() != tag.substr(1)) {
                return false;
            }
            stack.pop_back();
        } else {
            const std::size_t space = tag.find_first_of(" \t\n");
            stack.push_back(space == std::string::npos ? tag : tag.substr(0, space));
        }
    }
    return stack.empty();
}

} // namespace

TEST_SUITE_BEGIN("io");

TEST_CASE("csv round trip is exact for randomized spectra") {
    testsupport::Rng rng(777);
    for (int i = 0; i < 50; ++i) {
        const ImpedanceSpectrum original = random_spectrum(rng);
        std::ostringstream out;
        io::save_spectrum_csv(original, out);
        std::istringstream in(out.str());
        const ImpedanceSpectrum loaded = io::load_spectrum_csv(in);
        CHECK(loaded == original);
    }
}

TEST_CASE("csv serialization is byte-deterministic") {
    const auto spectrum = synth_spectrum({6000.0, 2.2, 110e-12},
                                         CircuitTopology::ParallelResonant,
                                         {10.0, 25000.0, 128, SweepSpacing::Logarithmic});
    std::ostringstream a;
    std::ostringstream b;
    io::save_spectrum_csv(spectrum, a);
    io::save_spectrum_csv(spectrum, b);
    CHECK(a.str() == b.str());
}

TEST_CASE("csv loader rejects malformed input") {
    SUBCASE("bad header") {
        std::istringstream in("freq,real,imag\n1,2,3\n2,3,4\n");
        CHECK_THROWS_AS(io::load_spectrum_csv(in), ParseError);
    }
    SUBCASE("missing header") {
        std::istringstream in("");
        CHECK_THROWS_AS(io::load_spectrum_csv(in), ParseError);
    }
    SUBCASE("non-increasing frequencies") {
        std::istringstream in("frequency_hz,z_real_ohm,z_imag_ohm\n10,1,0\n10,2,0\n");
        CHECK_THROWS_AS(io::load_spectrum_csv(in), ParseError);
    }
    SUBCASE("too few samples") {
        std::istringstream in("frequency_hz,z_real_ohm,z_imag_ohm\n10,1,0\n");
        CHECK_THROWS_AS(io::load_spectrum_csv(in), ParseError);
    }
    SUBCASE("garbage number") {
        std::istringstream in("frequency_hz,z_real_ohm,z_imag_ohm\n10,1,0\n20,x,0\n");
        CHECK_THROWS_AS(io::load_spectrum_csv(in), ParseError);
    }
    SUBCASE("wrong field count") {
        std::istringstream in("frequency_hz,z_real_ohm,z_imag_ohm\n10,1\n20,2,0\n");
        CHECK_THROWS_AS(io::load_spectrum_csv(in), ParseError);
    }
    SUBCASE("metadata after the header") {
        std::istringstream in(
            "frequency_hz,z_real_ohm,z_imag_ohm\n10,1,0\n# late=1\n20,2,0\n");
        CHECK_THROWS_AS(io::load_spectrum_csv(in), ParseError);
    }
}

TEST_CASE("metadata survives the round trip") {
    ImpedanceSpectrum spectrum;
    spectrum.samples = {{10.0, {1.0, 2.0}}, {20.0, {3.0, -4.0}}};
    spectrum.metadata["gauge"] = "42";
    spectrum.metadata["turns"] = "8350";
    spectrum.metadata["label"] = "bench rig, unpotted";
    std::ostringstream out;
    io::save_spectrum_csv(spectrum, out);
    std::istringstream in(out.str());
    CHECK(io::load_spectrum_csv(in) == spectrum);
}

TEST_CASE("coefficient file round trips the built-in table") {
    std::ostringstream out;
    io::save_coefficients(builtin_design_table(), out);
    std::istringstream in(out.str());
    const GaugeDesignTable loaded = io::load_coefficients(in);
    REQUIRE(loaded.size() == 2);
    for (int gauge : {42, 44}) {
        const auto& a = builtin_design_table().at(gauge);
        const auto& b = loaded.at(gauge);
        CHECK(a.f_res_curve.prefactor_a == b.f_res_curve.prefactor_a);
        CHECK(a.f_res_curve.rate_b == b.f_res_curve.rate_b);
        CHECK(a.z_max_curve.slope_m == b.z_max_curve.slope_m);
        CHECK(a.z_max_curve.intercept_c == b.z_max_curve.intercept_c);
        CHECK(a.usable_turns_min == b.usable_turns_min);
    }
}

TEST_CASE("coefficient file loader rejects malformed input") {
    SUBCASE("missing key") {
        std::istringstream in("[gauge 42]\nf_res_prefactor_a_hz = 33300\n");
        CHECK_THROWS_AS(io::load_coefficients(in), ParseError);
    }
    SUBCASE("key outside a section") {
        std::istringstream in("f_res_prefactor_a_hz = 33300\n");
        CHECK_THROWS_AS(io::load_coefficients(in), ParseError);
    }
    SUBCASE("empty file") {
        std::istringstream in("\n# just a comment\n");
        CHECK_THROWS_AS(io::load_coefficients(in), ParseError);
    }
    SUBCASE("bad section") {
        std::istringstream in("[gauge]\n");
        CHECK_THROWS_AS(io::load_coefficients(in), ParseError);
    }
    SUBCASE("nonpositive prefactor") {
        std::istringstream in(
            "[gauge 42]\n"
            "f_res_prefactor_a_hz = -1\n"
            "f_res_rate_b_per_turn = -1e-4\n"
            "z_max_slope_ohm_per_turn = 121\n"
            "z_max_intercept_ohm = -36300\n"
            "usable_turns_min = 2000\n");
        CHECK_THROWS_AS(io::load_coefficients(in), ParseError);
    }
}

TEST_CASE("svg plot output") {
    const auto low = synth_spectrum(testsupport::design_point_params(8500.0, 1.2e6),
                                    CircuitTopology::ParallelResonant,
                                    {500.0, 25000.0, 256, SweepSpacing::Logarithmic});
    const auto high = synth_spectrum(testsupport::design_point_params(18000.0, 5.5e5),
                                     CircuitTopology::ParallelResonant,
                                     {500.0, 25000.0, 256, SweepSpacing::Logarithmic});
    std::vector<io::PlotSeries> series{{"N=12000", low}, {"N=5000", high}};

    io::PlotOptions options;
    options.log_x = true;
    options.mark_peaks = true;

    std::ostringstream out;
    io::write_svg_plot(series, options, out);
    const std::string svg = out.str();

    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(tags_balanced(svg));

    // one path per trace plus two marker circles
    std::size_t paths = 0;
    for (std::size_t pos = 0; (pos = svg.find("<path", pos)) != std::string::npos; ++pos) {
        ++paths;
    }
    CHECK(paths == 2);
    std::size_t circles = 0;
    for (std::size_t pos = 0; (pos = svg.find("<circle", pos)) != std::string::npos; ++pos) {
        ++circles;
    }
    CHECK(circles == 2);
    CHECK(svg.find("N=12000") != std::string::npos);

    // byte-deterministic
    std::ostringstream again;
    io::write_svg_plot(series, options, again);
    CHECK(again.str() == svg);
}

TEST_CASE("svg labels are xml-escaped") {
    ImpedanceSpectrum spectrum;
    spectrum.samples = {{10.0, {1.0, 0.0}}, {20.0, {2.0, 0.0}}};
    std::vector<io::PlotSeries> series{{"a<b & \"c\">", spectrum}};
    std::ostringstream out;
    io::write_svg_plot(series, io::PlotOptions{}, out);
    CHECK(out.str().find("a<b") == std::string::npos);
    CHECK(out.str().find("a&lt;b &amp; &quot;c&quot;&gt;") != std::string::npos);
    CHECK(tags_balanced(out.str()));
}

TEST_SUITE_END();
