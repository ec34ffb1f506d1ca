#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pickup/circuit.hpp"
#include "pickup/spectrum.hpp"

namespace pickup {

/// Resonance descriptors extracted from one spectrum. width_3db is the span
/// where magnitude >= z_max/sqrt(2); it is absent when either crossing falls
/// outside the sampled range.
struct ResonanceSummary {
    double f_res_hz = 0.0;
    double z_max_ohm = 0.0;
    std::optional<double> width_3db_hz{};
    std::optional<double> q_estimate{};
};

/// Outcome of fit_lcr. Non-convergence is a reported state, not an error.
struct FitReport {
    LcrParams params{};
    double residual_rms_ohm = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Locates the maximum-magnitude sample (ties resolve to the lowest
/// frequency), refines frequency and magnitude with a three-point parabola
/// in (log f, magnitude), and estimates the -3 dB width by linear
/// interpolation of the threshold crossings. Throws PeakAtEdge when the
/// maximum sits on the first or last sample.
ResonanceSummary find_resonant_peak(const ImpedanceSpectrum& spectrum);

/// Damped least-squares fit of (R, L, C) to the spectrum's magnitude, using
/// relative residuals. With init absent, R is seeded from the lowest-frequency
/// magnitude, C from a 100 pF prior, and L from the located peak; that path
/// propagates PeakAtEdge. A loss_R_v supplied in init is held fixed in the
/// model, not fitted.
FitReport fit_lcr(const ImpedanceSpectrum& spectrum, CircuitTopology topology,
                  const std::optional<LcrParams>& init = {});

struct BatchRow {
    double turns = 0.0;
    int gauge_awg = 0;
    ResonanceSummary summary{};
};

struct SkippedRow {
    std::size_t input_index = 0;
    std::string reason;
};

/// Rows ordered by (gauge, turns); per-spectrum failures are collected in
/// `skipped`, never silently dropped. Each spectrum must carry "turns" and
/// "gauge" metadata; rows missing them are skipped with a reason.
struct BatchSummaries {
    std::vector<BatchRow> rows;
    std::vector<SkippedRow> skipped;
};

BatchSummaries batch_summaries(const std::vector<ImpedanceSpectrum>& spectra);

} // namespace pickup
