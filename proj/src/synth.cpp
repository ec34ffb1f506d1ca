#include "pickup/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace pickup {

namespace {

void require_valid(const FrequencySweep& sweep) {
    if (!sweep.valid()) {
        throw std::invalid_argument("FrequencySweep invariant violated: need "
                                    "0 < f_start < f_stop and n_points >= 2");
    }
}

/// Standard-normal draws from a fully specified engine. Box-Muller on the
/// raw 64-bit stream, so the byte-for-byte output does not depend on the
/// standard library's distribution internals.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

    double next() {
        const double u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log1p(-u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    // in [0, 1), 53-bit resolution
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    std::mt19937_64 engine_;
};

void apply_noise(ImpedanceSpectrum& spectrum, const std::optional<NoiseSpec>& noise) {
    if (!noise) {
        return;
    }
    if (!noise->valid()) {
        throw std::invalid_argument("NoiseSpec invariant violated: relative_sigma >= 0");
    }
    GaussianStream gauss(noise->seed);
    for (auto& sample : spectrum.samples) {
        sample.z_ohm *= std::exp(noise->relative_sigma * gauss.next());
    }
}

const char* topology_name(CircuitTopology topology) {
    return topology == CircuitTopology::SeriesLcr ? "series" : "parallel";
}

} // namespace

std::vector<double> sweep_frequencies(const FrequencySweep& sweep) {
    require_valid(sweep);
    const int n = sweep.n_points;
    std::vector<double> frequencies(static_cast<std::size_t>(n));
    frequencies.front() = sweep.f_start_hz;
    frequencies.back() = sweep.f_stop_hz;
    if (sweep.spacing == SweepSpacing::Linear) {
        const double span = sweep.f_stop_hz - sweep.f_start_hz;
        for (int i = 1; i < n - 1; ++i) {
            frequencies[i] = sweep.f_start_hz + span * static_cast<double>(i) / (n - 1);
        }
    } else {
        const double log_start = std::log(sweep.f_start_hz);
        const double log_span = std::log(sweep.f_stop_hz) - log_start;
        for (int i = 1; i < n - 1; ++i) {
            frequencies[i] = std::exp(log_start + log_span * static_cast<double>(i) / (n - 1));
        }
    }
    return frequencies;
}

ImpedanceSpectrum synth_spectrum(const LcrParams& params, CircuitTopology topology,
                                 const FrequencySweep& sweep,
                                 const std::optional<NoiseSpec>& noise) {
    ImpedanceSpectrum spectrum;
    const auto frequencies = sweep_frequencies(sweep);
    spectrum.samples.reserve(frequencies.size());
    for (double f : frequencies) {
        spectrum.samples.push_back({f, impedance(params, topology, f)});
    }
    apply_noise(spectrum, noise);
    spectrum.metadata["kind"] = "ideal";
    spectrum.metadata["topology"] = topology_name(topology);
    return spectrum;
}

ImpedanceSpectrum synth_measured_ratio(const LcrParams& params, CircuitTopology topology,
                                       const MeasurementChain& chain,
                                       const FrequencySweep& sweep,
                                       const std::optional<NoiseSpec>& noise) {
    if (!chain.valid()) {
        throw std::invalid_argument("MeasurementChain invariant violated");
    }
    ImpedanceSpectrum spectrum;
    const auto frequencies = sweep_frequencies(sweep);
    spectrum.samples.reserve(frequencies.size());
    for (double f : frequencies) {
        const std::complex<double> z_pickup = impedance(params, topology, f);
        // Parallel the pickup with the cable capacitance and the analyzer
        // input resistance via admittances.
        std::complex<double> y = 1.0 / z_pickup;
        y += std::complex<double>{0.0, 2.0 * std::numbers::pi * f * chain.cable_capacitance_f};
        if (chain.input_resistance_ohm) {
            y += 1.0 / *chain.input_resistance_ohm;
        }
        const std::complex<double> z_eff = 1.0 / y;
        const std::complex<double> scaled_ratio =
            chain.load_resistor_ohm * z_eff / (z_eff + chain.load_resistor_ohm);
        spectrum.samples.push_back({f, scaled_ratio});
    }
    apply_noise(spectrum, noise);
    spectrum.metadata["kind"] = "measured_ratio";
    spectrum.metadata["topology"] = topology_name(topology);
    return spectrum;
}

} // namespace pickup
