#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pickup/circuit.hpp"
#include "pickup/spectrum.hpp"

namespace pickup {

enum class SweepSpacing {
    Linear,
    Logarithmic,
};

/// Swept-sine frequency grid. The analyzer's nominal 0-25 kHz range cannot
/// start at DC, so the default starts at 10 Hz.
struct FrequencySweep {
    double f_start_hz = 10.0;
    double f_stop_hz = 25000.0;
    int n_points = 1024;
    SweepSpacing spacing = SweepSpacing::Logarithmic;

    bool valid() const {
        return 0.0 < f_start_hz && f_start_hz < f_stop_hz && n_points >= 2;
    }
};

/// The series load resistor / cable capacitance / analyzer input loading of
/// a real swept-sine measurement rig.
struct MeasurementChain {
    double load_resistor_ohm = 200000.0;
    double cable_capacitance_f = 0.0;
    std::optional<double> input_resistance_ohm{};

    bool valid() const {
        return load_resistor_ohm > 0.0 && cable_capacitance_f >= 0.0 &&
               (!input_resistance_ohm || *input_resistance_ohm > 0.0);
    }
};

/// Multiplicative Gaussian noise on sample magnitude; phase is untouched.
/// Output is deterministic per seed.
struct NoiseSpec {
    double relative_sigma = 0.0;
    std::uint64_t seed = 0;

    bool valid() const { return relative_sigma >= 0.0; }
};

/// Returns n_points frequencies, endpoints exactly f_start / f_stop,
/// equidistant in f (Linear) or in log f (Logarithmic).
std::vector<double> sweep_frequencies(const FrequencySweep& sweep);

/// One complex impedance sample per sweep frequency, straight from the
/// circuit model, optionally noise-perturbed.
ImpedanceSpectrum synth_spectrum(const LcrParams& params, CircuitTopology topology,
                                 const FrequencySweep& sweep,
                                 const std::optional<NoiseSpec>& noise = {});

/// What the analyzer actually records: the pickup paralleled with cable and
/// input loading, divided against the series load resistor. The stored value
/// is load_resistor * Z_eff / (Z_eff + load_resistor), which keeps ohm units
/// and tends to the raw impedance as the load resistor grows.
ImpedanceSpectrum synth_measured_ratio(const LcrParams& params, CircuitTopology topology,
                                       const MeasurementChain& chain,
                                       const FrequencySweep& sweep,
                                       const std::optional<NoiseSpec>& noise = {});

} // namespace pickup
