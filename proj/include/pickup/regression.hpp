#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pickup/coil.hpp"
#include "pickup/errors.hpp"

namespace pickup {

/// f(N) = prefactor_a * exp(rate_b * N). rate_b is negative for the
/// physical resonant-frequency curves.
struct ExpCurve {
    double prefactor_a = 0.0;  // hertz
    double rate_b = 0.0;       // per turn

    double operator()(double turns) const;
};

/// z(N) = slope_m * N + intercept_c.
struct LinCurve {
    double slope_m = 0.0;     // ohms per turn
    double intercept_c = 0.0; // ohms

    double operator()(double turns) const;
};

struct GaugeDesign {
    ExpCurve f_res_curve{};
    LinCurve z_max_curve{};
    int usable_turns_min = 2000;
};

/// Gauge number -> fitted design curves. The built-in table carries exactly
/// the 42 and 44 AWG coefficient sets.
using GaugeDesignTable = std::map<int, GaugeDesign>;

const GaugeDesignTable& builtin_design_table();

/// Turn counts above this sit outside the measured grid and are flagged
/// low-confidence on prediction.
inline constexpr int k_tested_turns_max = 12000;

struct FrequencyPrediction {
    double f_res_hz = 0.0;
    bool low_confidence = false;  // outside [usable_turns_min, tested max]
};

struct ImpedancePrediction {
    double z_ohm = 0.0;  // raw line value, carried even when not usable
    bool usable = false; // false when the line dips to zero or below
    bool low_confidence = false;
};

FrequencyPrediction predict_resonant_frequency(int gauge_awg, double turns,
                                               const GaugeDesignTable& table = builtin_design_table());

ImpedancePrediction predict_peak_impedance(int gauge_awg, double turns,
                                           const GaugeDesignTable& table = builtin_design_table());

/// Log-linear ordinary least squares: ln f = ln a + b N. Exact recovery on
/// noise-free exponential data. Throws DegenerateInput on fewer than 2
/// distinct N or nonpositive f.
ExpCurve fit_exp_curve(const std::vector<std::pair<double, double>>& points);

/// Ordinary least-squares line. Throws DegenerateInput when all N coincide.
LinCurve fit_lin_curve(const std::vector<std::pair<double, double>>& points);

enum class ToneLabel {
    dark,
    warm,
    bright,
    twang,
};

const char* tone_label_name(ToneLabel label);

struct ToneBand {
    ToneLabel label{};
    double f_low_hz = 0.0;
    double f_high_hz = 0.0;  // exclusive; boundary values belong to the upper band
};

/// dark < 6 kHz <= warm < 9.5 kHz <= bright < 13 kHz <= twang.
const std::vector<ToneBand>& default_tone_bands();

ToneLabel classify_tone(double f_res_hz,
                        const std::vector<ToneBand>& bands = default_tone_bands());

/// Everything a builder wants for one (gauge, turns) design point. Wire
/// length and DC resistance are absent when the coil does not fit the
/// bobbin; the fill result itself says so.
struct DesignReport {
    int gauge_awg = 0;
    int turns = 0;
    FrequencyPrediction f_res{};
    ImpedancePrediction z_max{};
    ToneLabel tone{};
    std::optional<BobbinFill> fill{};  // absent only for gauges with no wire constants
    std::optional<double> wire_length_m{};
    std::optional<double> dc_resistance_ohm{};
};

DesignReport design_report(int gauge_awg, int turns,
                           const BobbinGeometry& geometry = BobbinGeometry{},
                           const GaugeDesignTable& table = builtin_design_table());

} // namespace pickup
