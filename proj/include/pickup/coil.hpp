#pragma once

#include <optional>

#include "pickup/errors.hpp"

namespace pickup {

/// Magnet-wire constants at 20 C. overall_diameter includes the enamel
/// build; the defaults add 0.008 mm of single-build insulation to the bare
/// copper diameter.
struct WireGauge {
    int awg = 0;
    double bare_diameter_mm = 0.0;
    double resistance_per_meter = 0.0;  // ohms/m at 20 C
    double overall_diameter_mm = 0.0;

    bool valid() const {
        return bare_diameter_mm > 0.0 && overall_diameter_mm >= bare_diameter_mm &&
               resistance_per_meter > 0.0;
    }
};

WireGauge awg42();
WireGauge awg44();

/// Built-in wire constants, available for 42 and 44 AWG only.
std::optional<WireGauge> builtin_wire_gauge(int awg);

/// Obround (racetrack) winding core. The defaults are a representative
/// Stratocaster-style envelope.
struct BobbinGeometry {
    double core_length_mm = 63.0;     // straight section
    double core_width_mm = 6.0;       // end-radius diameter
    double winding_height_mm = 9.0;   // flange-to-flange traverse
    double max_build_mm = 6.0;        // radial depth available for wire

    bool valid() const {
        return core_length_mm > 0.0 && core_width_mm > 0.0 &&
               winding_height_mm > 0.0 && max_build_mm > 0.0;
    }
};

struct BobbinFill {
    bool fits = false;
    int layers_used = 0;
    double build_used_mm = 0.0;
};

/// Layers needed for N perfect-wound turns and whether they fit inside
/// max_build. Infeasibility is a result, not an error.
BobbinFill bobbin_fill_check(int turns, const BobbinGeometry& geometry,
                             const WireGauge& gauge);

/// Total wire length in meters for N turns wound in perfect layers on the
/// obround core: layer k sits at radial depth (2k-1)/2 wire diameters.
/// Throws DoesNotFit when the fill check fails.
double wire_length(int turns, const BobbinGeometry& geometry, const WireGauge& gauge);

/// length * ohms-per-meter, corrected for copper's 0.00393/C temperature
/// coefficient about the 20 C reference.
double dc_resistance(double length_m, const WireGauge& gauge, double temperature_c = 20.0);

} // namespace pickup
