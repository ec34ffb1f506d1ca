#include "pickup/coil.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pickup {

namespace {

constexpr double k_copper_temp_coeff = 0.00393;  // per degree C

int turns_per_layer(const BobbinGeometry& geometry, const WireGauge& gauge) {
    return static_cast<int>(std::floor(geometry.winding_height_mm /
                                       gauge.overall_diameter_mm));
}

double layer_perimeter_mm(const BobbinGeometry& geometry, const WireGauge& gauge,
                          int layer) {
    return 2.0 * geometry.core_length_mm +
           std::numbers::pi * (geometry.core_width_mm +
                               (2.0 * layer - 1.0) * gauge.overall_diameter_mm);
}

void require_valid(int turns, const BobbinGeometry& geometry, const WireGauge& gauge) {
    if (turns < 0) {
        throw std::invalid_argument("turns must be >= 0");
    }
    if (!geometry.valid()) {
        throw std::invalid_argument("BobbinGeometry invariant violated");
    }
    if (!gauge.valid()) {
        throw std::invalid_argument("WireGauge invariant violated");
    }
}

} // namespace

WireGauge awg42() {
    return {42, 0.063, 5.48, 0.071};
}

WireGauge awg44() {
    return {44, 0.056, 6.94, 0.064};
}

std::optional<WireGauge> builtin_wire_gauge(int awg) {
    if (awg == 42) {
        return awg42();
    }
    if (awg == 44) {
        return awg44();
    }
    return std::nullopt;
}

BobbinFill bobbin_fill_check(int turns, const BobbinGeometry& geometry,
                             const WireGauge& gauge) {
    require_valid(turns, geometry, gauge);
    if (turns == 0) {
        return {true, 0, 0.0};
    }
    const int per_layer = turns_per_layer(geometry, gauge);
    if (per_layer < 1) {
        return {false, 0, 0.0};  // wire thicker than the winding traverse
    }
    const int layers = (turns + per_layer - 1) / per_layer;
    const double build = layers * gauge.overall_diameter_mm;
    return {build <= geometry.max_build_mm, layers, build};
}

double wire_length(int turns, const BobbinGeometry& geometry, const WireGauge& gauge) {
    const BobbinFill fill = bobbin_fill_check(turns, geometry, gauge);
    if (!fill.fits) {
        throw DoesNotFit("turn count does not fit inside the bobbin build");
    }
    if (turns == 0) {
        return 0.0;
    }
    const int per_layer = turns_per_layer(geometry, gauge);
    double total_mm = 0.0;
    int remaining = turns;
    for (int layer = 1; remaining > 0; ++layer) {
        const int in_layer = remaining < per_layer ? remaining : per_layer;
        total_mm += in_layer * layer_perimeter_mm(geometry, gauge, layer);
        remaining -= in_layer;
    }
    return total_mm / 1000.0;
}

double dc_resistance(double length_m, const WireGauge& gauge, double temperature_c) {
    if (length_m < 0.0) {
        throw std::invalid_argument("length must be >= 0");
    }
    if (!gauge.valid()) {
        throw std::invalid_argument("WireGauge invariant violated");
    }
    return length_m * gauge.resistance_per_meter *
           (1.0 + k_copper_temp_coeff * (temperature_c - 20.0));
}

} // namespace pickup
