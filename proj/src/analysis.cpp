#include "pickup/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

#include "pickup/errors.hpp"

namespace pickup {

namespace {

std::vector<double> magnitudes(const ImpedanceSpectrum& spectrum) {
    std::vector<double> mags;
    mags.reserve(spectrum.samples.size());
    for (const auto& sample : spectrum.samples) {
        mags.push_back(sample.magnitude());
    }
    return mags;
}

/// Linear-interpolated frequency where the magnitude crosses `threshold`
/// between adjacent samples, searching outward from the peak. Returns
/// nothing when the curve never drops below the threshold inside the range.
std::optional<double> crossing_below(const ImpedanceSpectrum& spectrum,
                                     const std::vector<double>& mags,
                                     std::size_t peak_index, double threshold,
                                     bool left_side) {
    const auto& samples = spectrum.samples;
    const auto interp = [&](std::size_t lo, std::size_t hi) {
        // mags[lo] and mags[hi] straddle the threshold
        const double df = samples[hi].frequency_hz - samples[lo].frequency_hz;
        const double dm = mags[hi] - mags[lo];
        if (dm == 0.0) {
            return samples[lo].frequency_hz;
        }
        return samples[lo].frequency_hz + (threshold - mags[lo]) * df / dm;
    };
    if (left_side) {
        for (std::size_t i = peak_index; i-- > 0;) {
            if (mags[i] < threshold) {
                return interp(i, i + 1);
            }
        }
    } else {
        for (std::size_t i = peak_index + 1; i < samples.size(); ++i) {
            if (mags[i] < threshold) {
                return interp(i - 1, i);
            }
        }
    }
    return std::nullopt;
}

struct ImpedanceWithGradient {
    std::complex<double> z;
    // dZ/dR, dZ/dL, dZ/dC
    std::array<std::complex<double>, 3> dz;
};

/// Impedance and its analytic parameter gradient at one frequency. The
/// optional loss element is held fixed and only reshapes the gradient.
ImpedanceWithGradient impedance_gradient(const LcrParams& params, CircuitTopology topology,
                                         double f) {
    const double omega = 2.0 * std::numbers::pi * f;
    ImpedanceWithGradient out{};
    using cd = std::complex<double>;
    if (topology == CircuitTopology::SeriesLcr) {
        const double wc = omega * params.capacitance_C;
        out.z = cd{params.resistance_R, omega * params.inductance_L - 1.0 / wc};
        out.dz = {cd{1.0, 0.0}, cd{0.0, omega},
                  cd{0.0, 1.0 / (wc * params.capacitance_C)}};
    } else {
        const cd coil{params.resistance_R, omega * params.inductance_L};
        const cd cap{0.0, -1.0 / (omega * params.capacitance_C)};
        const cd denom = coil + cap;
        out.z = coil * cap / denom;
        const cd d_dcoil = cap * cap / (denom * denom);
        const cd d_dcap = coil * coil / (denom * denom);
        out.dz = {d_dcoil, d_dcoil * cd{0.0, omega},
                  d_dcap * (-cap / params.capacitance_C)};
    }
    if (params.loss_R_v) {
        const cd rv{*params.loss_R_v, 0.0};
        const cd shunted = out.z + rv;
        const cd jac = (rv / shunted) * (rv / shunted);
        for (auto& d : out.dz) {
            d *= jac;
        }
        out.z = out.z * rv / shunted;
    }
    return out;
}

struct ResidualEval {
    double objective = 0.0;           // sum of squared relative residuals
    std::vector<double> residuals;    // relative
    std::vector<std::array<double, 3>> jacobian;  // d residual / d ln(R,L,C)
};

ResidualEval evaluate(const ImpedanceSpectrum& spectrum, CircuitTopology topology,
                      const LcrParams& params, bool with_jacobian) {
    ResidualEval eval;
    eval.residuals.reserve(spectrum.samples.size());
    if (with_jacobian) {
        eval.jacobian.reserve(spectrum.samples.size());
    }
    for (const auto& sample : spectrum.samples) {
        const double y = sample.magnitude();
        const auto model = impedance_gradient(params, topology, sample.frequency_hz);
        const double mag = std::abs(model.z);
        const double r = (mag - y) / y;
        eval.objective += r * r;
        eval.residuals.push_back(r);
        if (with_jacobian) {
            // d|Z|/dp = Re(conj(Z) dZ/dp)/|Z|; chain to log-parameters
            const std::complex<double> zc = std::conj(model.z) / mag;
            eval.jacobian.push_back({
                (zc * model.dz[0]).real() * params.resistance_R / y,
                (zc * model.dz[1]).real() * params.inductance_L / y,
                (zc * model.dz[2]).real() * params.capacitance_C / y,
            });
        }
    }
    return eval;
}

/// Solve the 3x3 symmetric positive system A x = b by Gaussian elimination
/// with partial pivoting. Returns false when singular.
bool solve3(std::array<std::array<double, 3>, 3> a, std::array<double, 3> b,
            std::array<double, 3>& x) {
    std::array<int, 3> perm{0, 1, 2};
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int row = col + 1; row < 3; ++row) {
            if (std::abs(a[row][col]) > std::abs(a[pivot][col])) {
                pivot = row;
            }
        }
        if (a[pivot][col] == 0.0) {
            return false;
        }
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        std::swap(perm[col], perm[pivot]);
        for (int row = col + 1; row < 3; ++row) {
            const double factor = a[row][col] / a[col][col];
            for (int k = col; k < 3; ++k) {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    for (int row = 2; row >= 0; --row) {
        double sum = b[row];
        for (int k = row + 1; k < 3; ++k) {
            sum -= a[row][k] * x[k];
        }
        x[row] = sum / a[row][row];
    }
    return true;
}

LcrParams default_init(const ImpedanceSpectrum& spectrum) {
    LcrParams init;
    init.resistance_R = spectrum.samples.front().magnitude();
    if (init.resistance_R <= 0.0) {
        init.resistance_R = 1.0;
    }
    init.capacitance_C = 100e-12;  // typical single-coil distributed capacitance
    const ResonanceSummary peak = find_resonant_peak(spectrum);
    const double omega_res = 2.0 * std::numbers::pi * peak.f_res_hz;
    init.inductance_L = 1.0 / (omega_res * omega_res * init.capacitance_C);
    return init;
}

double rms_ohm(const ImpedanceSpectrum& spectrum, CircuitTopology topology,
               const LcrParams& params) {
    double sum = 0.0;
    for (const auto& sample : spectrum.samples) {
        const double d = impedance_magnitude(params, topology, sample.frequency_hz) -
                         sample.magnitude();
        sum += d * d;
    }
    return std::sqrt(sum / static_cast<double>(spectrum.samples.size()));
}

} // namespace

ResonanceSummary find_resonant_peak(const ImpedanceSpectrum& spectrum) {
    validate_spectrum(spectrum);
    if (spectrum.samples.size() < 3) {
        throw std::invalid_argument("find_resonant_peak needs at least 3 samples");
    }
    if (spectrum.samples.front().frequency_hz <= 0.0) {
        throw std::invalid_argument("find_resonant_peak needs positive frequencies "
                                    "(interpolation is in log f)");
    }
    const auto mags = magnitudes(spectrum);
    // ties resolve to the lowest-frequency maximal sample
    const std::size_t peak_index = static_cast<std::size_t>(
        std::max_element(mags.begin(), mags.end()) - mags.begin());
    if (peak_index == 0 || peak_index + 1 == mags.size()) {
        throw PeakAtEdge("maximum magnitude at spectrum edge; no interior peak");
    }

    const double y0 = mags[peak_index - 1];
    const double y1 = mags[peak_index];
    const double y2 = mags[peak_index + 1];
    const double x0 = std::log(spectrum.samples[peak_index - 1].frequency_hz);
    const double x1 = std::log(spectrum.samples[peak_index].frequency_hz);
    const double x2 = std::log(spectrum.samples[peak_index + 1].frequency_hz);

    // Three-point parabola vertex in (log f, magnitude). The offset is in
    // grid units; symmetric neighbours pin the vertex to the centre sample.
    const double curvature = y0 - 2.0 * y1 + y2;
    const double delta = curvature == 0.0 ? 0.0 : 0.5 * (y0 - y2) / curvature;

    ResonanceSummary summary;
    if (delta == 0.0) {
        summary.f_res_hz = spectrum.samples[peak_index].frequency_hz;
        summary.z_max_ohm = y1;
    } else {
        summary.f_res_hz = std::exp(x1 + delta * 0.5 * (x2 - x0));
        summary.z_max_ohm = y1 - 0.25 * (y0 - y2) * delta;
    }

    const double threshold = summary.z_max_ohm / std::sqrt(2.0);
    const auto left = crossing_below(spectrum, mags, peak_index, threshold, true);
    const auto right = crossing_below(spectrum, mags, peak_index, threshold, false);
    if (left && right) {
        const double width = *right - *left;
        if (width > 0.0) {
            summary.width_3db_hz = width;
            summary.q_estimate = summary.f_res_hz / width;
        }
    }
    return summary;
}

FitReport fit_lcr(const ImpedanceSpectrum& spectrum, CircuitTopology topology,
                  const std::optional<LcrParams>& init) {
    validate_spectrum(spectrum);
    if (spectrum.samples.size() < 8) {
        throw std::invalid_argument("fit_lcr needs at least 8 samples spanning the peak");
    }
    for (const auto& sample : spectrum.samples) {
        if (!(sample.magnitude() > 0.0)) {
            throw std::invalid_argument("fit_lcr needs strictly positive magnitudes");
        }
    }

    LcrParams params = init ? *init : default_init(spectrum);
    if (!params.valid() || params.resistance_R <= 0.0) {
        throw std::invalid_argument("fit_lcr needs a positive initial (R, L, C)");
    }

    constexpr int k_max_iterations = 200;
    constexpr double k_step_tol = 1e-10;
    constexpr double k_objective_tol = 1e-12;

    FitReport report;
    report.params = params;

    double lambda = 1e-3;
    ResidualEval current = evaluate(spectrum, topology, params, true);
    bool converged = false;
    int iterations = 0;

    while (iterations < k_max_iterations && !converged) {
        ++iterations;

        std::array<std::array<double, 3>, 3> hessian{};
        std::array<double, 3> gradient{};
        for (std::size_t i = 0; i < current.residuals.size(); ++i) {
            const auto& row = current.jacobian[i];
            for (int a = 0; a < 3; ++a) {
                gradient[a] += row[a] * current.residuals[i];
                for (int b = a; b < 3; ++b) {
                    hessian[a][b] += row[a] * row[b];
                }
            }
        }
        hessian[1][0] = hessian[0][1];
        hessian[2][0] = hessian[0][2];
        hessian[2][1] = hessian[1][2];

        bool accepted = false;
        while (lambda < 1e14) {
            auto damped = hessian;
            for (int a = 0; a < 3; ++a) {
                damped[a][a] += lambda * (hessian[a][a] > 0.0 ? hessian[a][a] : 1.0);
            }
            std::array<double, 3> step{};
            std::array<double, 3> rhs{-gradient[0], -gradient[1], -gradient[2]};
            if (!solve3(damped, rhs, step)) {
                lambda *= 3.0;
                continue;
            }
            LcrParams trial = params;
            trial.resistance_R = params.resistance_R * std::exp(step[0]);
            trial.inductance_L = params.inductance_L * std::exp(step[1]);
            trial.capacitance_C = params.capacitance_C * std::exp(step[2]);
            const ResidualEval next = evaluate(spectrum, topology, trial, true);
            if (next.objective <= current.objective) {
                const double step_norm = std::max({std::abs(step[0]), std::abs(step[1]),
                                                   std::abs(step[2])});
                const double improvement = current.objective - next.objective;
                params = trial;
                if (step_norm < k_step_tol ||
                    improvement <= k_objective_tol * current.objective) {
                    converged = true;
                }
                current = next;
                lambda = std::max(lambda / 3.0, 1e-12);
                accepted = true;
                break;
            }
            lambda *= 3.0;
        }
        if (!accepted) {
            break;  // damping exhausted, report as non-converged
        }
    }

    report.params = params;
    report.iterations = iterations;
    report.converged = converged;
    report.residual_rms_ohm = rms_ohm(spectrum, topology, params);
    return report;
}

BatchSummaries batch_summaries(const std::vector<ImpedanceSpectrum>& spectra) {
    BatchSummaries out;
    for (std::size_t i = 0; i < spectra.size(); ++i) {
        const auto& spectrum = spectra[i];
        const auto turns_it = spectrum.metadata.find("turns");
        const auto gauge_it = spectrum.metadata.find("gauge");
        if (turns_it == spectrum.metadata.end() || gauge_it == spectrum.metadata.end()) {
            out.skipped.push_back({i, "missing turns/gauge metadata"});
            continue;
        }
        char* end = nullptr;
        const double turns = std::strtod(turns_it->second.c_str(), &end);
        if (end == turns_it->second.c_str()) {
            out.skipped.push_back({i, "unparseable turns tag '" + turns_it->second + "'"});
            continue;
        }
        const long gauge = std::strtol(gauge_it->second.c_str(), &end, 10);
        if (end == gauge_it->second.c_str()) {
            out.skipped.push_back({i, "unparseable gauge tag '" + gauge_it->second + "'"});
            continue;
        }
        try {
            out.rows.push_back({turns, static_cast<int>(gauge), find_resonant_peak(spectrum)});
        } catch (const PeakAtEdge& err) {
            out.skipped.push_back({i, err.what()});
        } catch (const std::invalid_argument& err) {
            out.skipped.push_back({i, err.what()});
        }
    }
    std::stable_sort(out.rows.begin(), out.rows.end(), [](const BatchRow& a, const BatchRow& b) {
        if (a.gauge_awg != b.gauge_awg) {
            return a.gauge_awg < b.gauge_awg;
        }
        return a.turns < b.turns;
    });
    return out;
}

} // namespace pickup
