#include "pickup/circuit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pickup {

namespace {

constexpr double k_two_pi = 2.0 * std::numbers::pi;

void require_valid(const LcrParams& params) {
    if (!params.valid()) {
        throw std::invalid_argument("LcrParams invariant violated: need R >= 0, L > 0, "
                                    "C > 0, loss_R_v > 0 when present");
    }
}

std::complex<double> parallel(std::complex<double> a, std::complex<double> b) {
    return a * b / (a + b);
}

} // namespace

double inductive_reactance(double inductance_h, double frequency_hz) {
    if (inductance_h <= 0.0) {
        throw std::invalid_argument("inductive_reactance: L must be > 0");
    }
    if (frequency_hz < 0.0) {
        throw std::invalid_argument("inductive_reactance: f must be >= 0");
    }
    return k_two_pi * frequency_hz * inductance_h;
}

double capacitive_reactance(double capacitance_f, double frequency_hz) {
    if (capacitance_f <= 0.0) {
        throw std::invalid_argument("capacitive_reactance: C must be > 0");
    }
    if (frequency_hz < 0.0) {
        throw std::invalid_argument("capacitive_reactance: f must be >= 0");
    }
    if (frequency_hz == 0.0) {
        throw DivergentReactance("capacitive reactance diverges at f = 0 (open circuit at DC)");
    }
    return 1.0 / (k_two_pi * frequency_hz * capacitance_f);
}

std::complex<double> impedance(const LcrParams& params, CircuitTopology topology,
                               double frequency_hz) {
    require_valid(params);
    if (frequency_hz < 0.0) {
        throw std::invalid_argument("impedance: f must be >= 0");
    }

    std::complex<double> z;
    const double omega = k_two_pi * frequency_hz;
    switch (topology) {
    case CircuitTopology::SeriesLcr: {
        if (frequency_hz == 0.0) {
            throw DivergentReactance("series LCR impedance diverges at f = 0");
        }
        const double reactance = omega * params.inductance_L -
                                 1.0 / (omega * params.capacitance_C);
        z = {params.resistance_R, reactance};
        break;
    }
    case CircuitTopology::ParallelResonant: {
        if (frequency_hz == 0.0) {
            z = {params.resistance_R, 0.0};  // capacitor branch is open at DC
        } else {
            const std::complex<double> coil{params.resistance_R, omega * params.inductance_L};
            const std::complex<double> cap{0.0, -1.0 / (omega * params.capacitance_C)};
            z = parallel(coil, cap);
        }
        break;
    }
    }

    if (params.loss_R_v) {
        z = parallel(z, std::complex<double>{*params.loss_R_v, 0.0});
    }
    return z;
}

double impedance_magnitude(const LcrParams& params, CircuitTopology topology,
                           double frequency_hz) {
    return std::abs(impedance(params, topology, frequency_hz));
}

double resonant_frequency(double inductance_h, double capacitance_f) {
    if (inductance_h <= 0.0 || capacitance_f <= 0.0) {
        throw std::invalid_argument("resonant_frequency: L and C must be > 0");
    }
    return 1.0 / (k_two_pi * std::sqrt(inductance_h * capacitance_f));
}

} // namespace pickup
