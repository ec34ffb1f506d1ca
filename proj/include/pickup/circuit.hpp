#pragma once

#include <complex>
#include <optional>

#include "pickup/errors.hpp"

namespace pickup {

/// Equivalent-circuit parameters of a coil pickup: winding DC resistance,
/// inductance, distributed capacitance, and an optional parallel loss
/// element. loss_R_v absent means losses are neglected.
struct LcrParams {
    double resistance_R = 0.0;   // ohms
    double inductance_L = 0.0;   // henries
    double capacitance_C = 0.0;  // farads
    std::optional<double> loss_R_v{};  // ohms, parallel with the whole network

    bool valid() const {
        return resistance_R >= 0.0 && inductance_L > 0.0 && capacitance_C > 0.0 &&
               (!loss_R_v || *loss_R_v > 0.0);
    }
};

/// SeriesLcr: R, L, C all in series (resonance is an impedance minimum).
/// ParallelResonant: R in series with L, that branch in parallel with C
/// (resonance is the measured peak).
enum class CircuitTopology {
    SeriesLcr,
    ParallelResonant,
};

/// omega*L. f = 0 gives 0.
double inductive_reactance(double inductance_h, double frequency_hz);

/// 1/(omega*C). Throws DivergentReactance at f = 0.
double capacitive_reactance(double capacitance_f, double frequency_hz);

/// Complex impedance of the network at one frequency. The optional parallel
/// loss element, when present, shunts the whole network. SeriesLcr throws
/// DivergentReactance at f = 0; ParallelResonant returns R (the capacitor is
/// open) there.
std::complex<double> impedance(const LcrParams& params, CircuitTopology topology,
                               double frequency_hz);

/// |impedance|.
double impedance_magnitude(const LcrParams& params, CircuitTopology topology,
                           double frequency_hz);

/// 1/(2*pi*sqrt(L*C)), the frequency where the two reactances cancel.
double resonant_frequency(double inductance_h, double capacitance_f);

} // namespace pickup
