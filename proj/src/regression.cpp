#include "pickup/regression.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pickup {

namespace {

const GaugeDesign& lookup(int gauge_awg, const GaugeDesignTable& table) {
    const auto it = table.find(gauge_awg);
    if (it == table.end()) {
        throw UnknownGauge("unknown gauge " + std::to_string(gauge_awg) +
                           " AWG (table has no coefficients for it)");
    }
    return it->second;
}

bool outside_tested_range(double turns, const GaugeDesign& design) {
    return turns < design.usable_turns_min || turns > k_tested_turns_max;
}

/// Ordinary least squares for y = intercept + slope * x.
std::pair<double, double> ols(const std::vector<std::pair<double, double>>& points) {
    const double n = static_cast<double>(points.size());
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (const auto& [x, y] : points) {
        mean_x += x;
        mean_y += y;
    }
    mean_x /= n;
    mean_y /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& [x, y] : points) {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
    }
    if (sxx == 0.0) {
        throw DegenerateInput("least-squares fit needs at least 2 distinct N");
    }
    const double slope = sxy / sxx;
    return {mean_y - slope * mean_x, slope};
}

} // namespace

double ExpCurve::operator()(double turns) const {
    return prefactor_a * std::exp(rate_b * turns);
}

double LinCurve::operator()(double turns) const {
    return slope_m * turns + intercept_c;
}

const GaugeDesignTable& builtin_design_table() {
    static const GaugeDesignTable table{
        {42, {{3.33e4, -1.14e-4}, {121.0, -3.63e4}, 2000}},
        {44, {{2.54e4, -1.06e-4}, {102.0, -1.84e5}, 2000}},
    };
    return table;
}

FrequencyPrediction predict_resonant_frequency(int gauge_awg, double turns,
                                               const GaugeDesignTable& table) {
    if (turns < 0.0) {
        throw std::invalid_argument("turns must be >= 0");
    }
    const GaugeDesign& design = lookup(gauge_awg, table);
    return {design.f_res_curve(turns), outside_tested_range(turns, design)};
}

ImpedancePrediction predict_peak_impedance(int gauge_awg, double turns,
                                           const GaugeDesignTable& table) {
    if (turns < 0.0) {
        throw std::invalid_argument("turns must be >= 0");
    }
    const GaugeDesign& design = lookup(gauge_awg, table);
    const double z = design.z_max_curve(turns);
    return {z, z > 0.0, outside_tested_range(turns, design)};
}

ExpCurve fit_exp_curve(const std::vector<std::pair<double, double>>& points) {
    std::vector<std::pair<double, double>> log_points;
    log_points.reserve(points.size());
    for (const auto& [turns, f_res] : points) {
        if (!(f_res > 0.0)) {
            throw DegenerateInput("exponential fit needs strictly positive f_res");
        }
        log_points.emplace_back(turns, std::log(f_res));
    }
    if (log_points.size() < 2) {
        throw DegenerateInput("exponential fit needs at least 2 points");
    }
    const auto [intercept, slope] = ols(log_points);
    return {std::exp(intercept), slope};
}

LinCurve fit_lin_curve(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2) {
        throw DegenerateInput("linear fit needs at least 2 points");
    }
    const auto [intercept, slope] = ols(points);
    return {slope, intercept};
}

const char* tone_label_name(ToneLabel label) {
    switch (label) {
    case ToneLabel::dark:
        return "dark";
    case ToneLabel::warm:
        return "warm";
    case ToneLabel::bright:
        return "bright";
    case ToneLabel::twang:
        return "twang";
    }
    return "?";
}

const std::vector<ToneBand>& default_tone_bands() {
    static const std::vector<ToneBand> bands{
        {ToneLabel::dark, 0.0, 6000.0},
        {ToneLabel::warm, 6000.0, 9500.0},
        {ToneLabel::bright, 9500.0, 13000.0},
        {ToneLabel::twang, 13000.0, std::numeric_limits<double>::infinity()},
    };
    return bands;
}

ToneLabel classify_tone(double f_res_hz, const std::vector<ToneBand>& bands) {
    if (!(f_res_hz > 0.0)) {
        throw std::invalid_argument("classify_tone needs f_res > 0");
    }
    for (const auto& band : bands) {
        if (f_res_hz >= band.f_low_hz && f_res_hz < band.f_high_hz) {
            return band.label;
        }
    }
    throw std::invalid_argument("tone bands do not cover the requested frequency");
}

DesignReport design_report(int gauge_awg, int turns, const BobbinGeometry& geometry,
                           const GaugeDesignTable& table) {
    DesignReport report;
    report.gauge_awg = gauge_awg;
    report.turns = turns;
    report.f_res = predict_resonant_frequency(gauge_awg, turns, table);
    report.z_max = predict_peak_impedance(gauge_awg, turns, table);
    report.tone = classify_tone(report.f_res.f_res_hz);

    if (const auto gauge = builtin_wire_gauge(gauge_awg)) {
        report.fill = bobbin_fill_check(turns, geometry, *gauge);
        if (report.fill->fits) {
            report.wire_length_m = wire_length(turns, geometry, *gauge);
            report.dc_resistance_ohm = dc_resistance(*report.wire_length_m, *gauge);
        }
    }
    return report;
}

} // namespace pickup
