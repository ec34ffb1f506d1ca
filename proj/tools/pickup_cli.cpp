// Command-line front end: predict coil designs, synthesize impedance
// spectra, analyze measured/synthetic CSVs, refit design curves in batch,
// and render SVG overlay plots.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pickup/analysis.hpp"
#include "pickup/circuit.hpp"
#include "pickup/coil.hpp"
#include "pickup/errors.hpp"
#include "pickup/io/coefficient_file.hpp"
#include "pickup/io/spectrum_csv.hpp"
#include "pickup/io/svg_plot.hpp"
#include "pickup/regression.hpp"
#include "pickup/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt(double value, const char* spec = "%.6g") {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), spec, value);
    return buffer;
}

std::string fmt17(double value) {
    return fmt(value, "%.17g");
}

// --- key = value files (bobbin geometry) ---------------------------------

std::map<std::string, double> load_key_value_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw pickup::ParseError("cannot open " + path.string());
    }
    std::map<std::string, double> values;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos) {
                throw pickup::ParseError(path.string() + ":" + std::to_string(line_no) +
                                         ": expected 'key = value'");
            }
            continue;
        }
        std::istringstream key_stream(line.substr(0, eq));
        std::string key;
        key_stream >> key;
        const std::string value_text = line.substr(eq + 1);
        char* end = nullptr;
        const double value = std::strtod(value_text.c_str(), &end);
        if (end == value_text.c_str()) {
            throw pickup::ParseError(path.string() + ":" + std::to_string(line_no) +
                                     ": bad number '" + value_text + "'");
        }
        values[key] = value;
    }
    return values;
}

pickup::BobbinGeometry load_geometry(const fs::path& path) {
    pickup::BobbinGeometry geometry;
    for (const auto& [key, value] : load_key_value_file(path)) {
        if (key == "core_length_mm") {
            geometry.core_length_mm = value;
        } else if (key == "core_width_mm") {
            geometry.core_width_mm = value;
        } else if (key == "winding_height_mm") {
            geometry.winding_height_mm = value;
        } else if (key == "max_build_mm") {
            geometry.max_build_mm = value;
        } else {
            throw pickup::ParseError(path.string() + ": unknown geometry key '" + key + "'");
        }
    }
    if (!geometry.valid()) {
        throw pickup::ParseError(path.string() + ": geometry dimensions must be > 0");
    }
    return geometry;
}

// --- predict ---------------------------------------------------------------

json report_to_json(const pickup::DesignReport& report) {
    json j;
    j["gauge_awg"] = report.gauge_awg;
    j["turns"] = report.turns;
    j["f_res_hz"] = report.f_res.f_res_hz;
    j["f_res_low_confidence"] = report.f_res.low_confidence;
    j["z_max_ohm"] = report.z_max.z_ohm;
    j["z_max_usable"] = report.z_max.usable;
    j["z_max_low_confidence"] = report.z_max.low_confidence;
    j["tone"] = pickup::tone_label_name(report.tone);
    if (report.fill) {
        j["fill"] = {{"fits", report.fill->fits},
                     {"layers_used", report.fill->layers_used},
                     {"build_used_mm", report.fill->build_used_mm}};
    } else {
        j["fill"] = nullptr;
    }
    j["wire_length_m"] = report.wire_length_m ? json(*report.wire_length_m) : json(nullptr);
    j["dc_resistance_ohm"] =
        report.dc_resistance_ohm ? json(*report.dc_resistance_ohm) : json(nullptr);
    return j;
}

void print_report_text(const pickup::DesignReport& report,
                       const pickup::BobbinGeometry& geometry) {
    std::cout << "design report: " << report.gauge_awg << " AWG, " << report.turns
              << " turns\n";
    std::cout << "  resonant frequency : " << fmt(report.f_res.f_res_hz) << " Hz\n";
    if (report.z_max.usable) {
        std::cout << "  peak impedance     : " << fmt(report.z_max.z_ohm) << " ohm\n";
    } else {
        std::cout << "  peak impedance     : NOT USABLE (design line gives "
                  << fmt(report.z_max.z_ohm) << " ohm)\n";
    }
    std::cout << "  tone class         : " << pickup::tone_label_name(report.tone) << '\n';
    if (report.fill) {
        if (report.fill->fits) {
            std::cout << "  wire length        : " << fmt(*report.wire_length_m) << " m\n"
                      << "  dc resistance      : " << fmt(*report.dc_resistance_ohm)
                      << " ohm (20 C)\n";
        }
        std::cout << "  bobbin fill        : " << report.fill->layers_used << " layers, "
                  << fmt(report.fill->build_used_mm) << " mm of "
                  << fmt(geometry.max_build_mm) << " mm build"
                  << (report.fill->fits ? "" : "  ** DOES NOT FIT **") << '\n';
    }
    if (report.f_res.low_confidence || report.z_max.low_confidence) {
        std::cout << "  ** LOW CONFIDENCE: turn count outside the fitted range ["
                  << pickup::builtin_design_table().begin()->second.usable_turns_min
                  << ", " << pickup::k_tested_turns_max << "] **\n";
    }
}

int cmd_predict(int gauge, int turns, const std::optional<fs::path>& geometry_file,
                const std::optional<fs::path>& coefficients_file, bool as_json) {
    const pickup::BobbinGeometry geometry =
        geometry_file ? load_geometry(*geometry_file) : pickup::BobbinGeometry{};
    const pickup::GaugeDesignTable table = coefficients_file
                                               ? pickup::io::load_coefficients(*coefficients_file)
                                               : pickup::builtin_design_table();
    const pickup::DesignReport report = pickup::design_report(gauge, turns, geometry, table);
    if (as_json) {
        std::cout << report_to_json(report).dump(2) << '\n';
    } else {
        print_report_text(report, geometry);
    }
    return 0;
}

// --- synth -----------------------------------------------------------------

struct SynthArgs {
    double r = 0.0;
    double l = 0.0;
    double c = 0.0;
    std::optional<double> rv{};
    std::string topology = "parallel";
    pickup::FrequencySweep sweep{};
    std::string spacing = "log";
    double noise_sigma = 0.0;
    std::uint64_t seed = 0;
    bool chain_enabled = false;
    pickup::MeasurementChain chain{};
    std::vector<std::string> tags;
    fs::path output;
};

int cmd_synth(const SynthArgs& args) {
    pickup::LcrParams params{args.r, args.l, args.c, args.rv};
    if (!params.valid()) {
        std::cerr << "error: need R >= 0, L > 0, C > 0 (and RV > 0 when given)\n";
        return 1;
    }
    const pickup::CircuitTopology topology = args.topology == "series"
                                                 ? pickup::CircuitTopology::SeriesLcr
                                                 : pickup::CircuitTopology::ParallelResonant;
    pickup::FrequencySweep sweep = args.sweep;
    sweep.spacing = args.spacing == "linear" ? pickup::SweepSpacing::Linear
                                             : pickup::SweepSpacing::Logarithmic;
    std::optional<pickup::NoiseSpec> noise;
    if (args.noise_sigma > 0.0) {
        noise = pickup::NoiseSpec{args.noise_sigma, args.seed};
    }

    pickup::ImpedanceSpectrum spectrum =
        args.chain_enabled
            ? pickup::synth_measured_ratio(params, topology, args.chain, sweep, noise)
            : pickup::synth_spectrum(params, topology, sweep, noise);

    auto& meta = spectrum.metadata;
    meta["r_ohm"] = fmt17(params.resistance_R);
    meta["l_h"] = fmt17(params.inductance_L);
    meta["c_f"] = fmt17(params.capacitance_C);
    if (params.loss_R_v) {
        meta["rv_ohm"] = fmt17(*params.loss_R_v);
    }
    meta["f_start_hz"] = fmt17(sweep.f_start_hz);
    meta["f_stop_hz"] = fmt17(sweep.f_stop_hz);
    meta["n_points"] = std::to_string(sweep.n_points);
    meta["spacing"] = args.spacing == "linear" ? "linear" : "log";
    if (noise) {
        meta["noise_sigma"] = fmt17(noise->relative_sigma);
        meta["noise_seed"] = std::to_string(noise->seed);
    }
    if (args.chain_enabled) {
        meta["load_resistor_ohm"] = fmt17(args.chain.load_resistor_ohm);
        meta["cable_capacitance_f"] = fmt17(args.chain.cable_capacitance_f);
        if (args.chain.input_resistance_ohm) {
            meta["input_resistance_ohm"] = fmt17(*args.chain.input_resistance_ohm);
        }
    }
    for (const auto& tag : args.tags) {
        const auto eq = tag.find('=');
        if (eq == std::string::npos) {
            std::cerr << "error: --tag expects key=value, got '" << tag << "'\n";
            return 1;
        }
        meta[tag.substr(0, eq)] = tag.substr(eq + 1);
    }

    pickup::io::save_spectrum_csv(spectrum, args.output);
    std::cout << "wrote " << spectrum.samples.size() << " samples to "
              << args.output.string() << '\n';
    return 0;
}

// --- analyze ----------------------------------------------------------------

json summary_to_json(const pickup::ResonanceSummary& summary) {
    json j;
    j["f_res_hz"] = summary.f_res_hz;
    j["z_max_ohm"] = summary.z_max_ohm;
    j["width_3db_hz"] = summary.width_3db_hz ? json(*summary.width_3db_hz) : json(nullptr);
    j["q_estimate"] = summary.q_estimate ? json(*summary.q_estimate) : json(nullptr);
    return j;
}

int cmd_analyze(const fs::path& input, bool run_fit, const std::string& topology_name,
                bool as_json) {
    const pickup::ImpedanceSpectrum spectrum = pickup::io::load_spectrum_csv(input);
    const pickup::ResonanceSummary summary = pickup::find_resonant_peak(spectrum);
    const pickup::CircuitTopology topology = topology_name == "series"
                                                 ? pickup::CircuitTopology::SeriesLcr
                                                 : pickup::CircuitTopology::ParallelResonant;
    std::optional<pickup::FitReport> fit;
    if (run_fit) {
        fit = pickup::fit_lcr(spectrum, topology);
    }

    if (as_json) {
        json j = summary_to_json(summary);
        if (fit) {
            j["fit"] = {{"r_ohm", fit->params.resistance_R},
                        {"l_h", fit->params.inductance_L},
                        {"c_f", fit->params.capacitance_C},
                        {"residual_rms_ohm", fit->residual_rms_ohm},
                        {"iterations", fit->iterations},
                        {"converged", fit->converged}};
        }
        std::cout << j.dump(2) << '\n';
        return 0;
    }

    std::cout << "resonance summary for " << input.string() << '\n'
              << "  f_res : " << fmt(summary.f_res_hz) << " Hz\n"
              << "  z_max : " << fmt(summary.z_max_ohm) << " ohm\n";
    if (summary.width_3db_hz) {
        std::cout << "  width : " << fmt(*summary.width_3db_hz) << " Hz (-3 dB)\n"
                  << "  q     : " << fmt(*summary.q_estimate) << '\n';
    } else {
        std::cout << "  width : not resolved inside the sweep\n";
    }
    if (fit) {
        std::cout << "equivalent circuit fit (" << topology_name << " topology)\n"
                  << "  R : " << fmt(fit->params.resistance_R) << " ohm\n"
                  << "  L : " << fmt(fit->params.inductance_L) << " H\n"
                  << "  C : " << fmt(fit->params.capacitance_C) << " F\n"
                  << "  residual rms : " << fmt(fit->residual_rms_ohm) << " ohm\n"
                  << "  converged    : " << (fit->converged ? "yes" : "NO") << " ("
                  << fit->iterations << " iterations)\n";
    }
    return 0;
}

// --- fit-batch ---------------------------------------------------------------

std::vector<fs::path> collect_csv_paths(const fs::path& input) {
    std::vector<fs::path> paths;
    if (fs::is_directory(input)) {
        for (const auto& entry : fs::directory_iterator(input)) {
            if (entry.is_regular_file() && entry.path().extension() == ".csv") {
                paths.push_back(entry.path());
            }
        }
        std::sort(paths.begin(), paths.end());
    } else {
        std::ifstream manifest(input);
        if (!manifest) {
            throw pickup::ParseError("cannot open " + input.string());
        }
        std::string line;
        while (std::getline(manifest, line)) {
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            if (line.empty() || line[0] == '#') {
                continue;
            }
            fs::path p(line);
            paths.push_back(p.is_absolute() ? p : input.parent_path() / p);
        }
    }
    return paths;
}

int cmd_fit_batch(const fs::path& input, const fs::path& output, int usable_turns_min) {
    const std::vector<fs::path> paths = collect_csv_paths(input);
    if (paths.empty()) {
        std::cerr << "error: no spectra found in " << input.string() << '\n';
        return 1;
    }
    std::vector<pickup::ImpedanceSpectrum> spectra;
    spectra.reserve(paths.size());
    for (const auto& path : paths) {
        spectra.push_back(pickup::io::load_spectrum_csv(path));
    }
    const pickup::BatchSummaries batch = pickup::batch_summaries(spectra);
    for (const auto& skipped : batch.skipped) {
        std::cerr << "warning: skipped " << paths[skipped.input_index].string() << ": "
                  << skipped.reason << '\n';
    }

    std::map<int, std::vector<std::pair<double, double>>> f_points;
    std::map<int, std::vector<std::pair<double, double>>> z_points;
    for (const auto& row : batch.rows) {
        f_points[row.gauge_awg].emplace_back(row.turns, row.summary.f_res_hz);
        z_points[row.gauge_awg].emplace_back(row.turns, row.summary.z_max_ohm);
    }

    pickup::GaugeDesignTable table;
    for (const auto& [gauge, points] : f_points) {
        if (points.size() < 3) {
            std::cerr << "warning: gauge " << gauge << " omitted: needs >= 3 spectra, has "
                      << points.size() << '\n';
            continue;
        }
        try {
            pickup::GaugeDesign design;
            design.f_res_curve = pickup::fit_exp_curve(points);
            design.z_max_curve = pickup::fit_lin_curve(z_points[gauge]);
            design.usable_turns_min = usable_turns_min;
            table[gauge] = design;

            double exp_ss = 0.0;
            double lin_ss = 0.0;
            for (const auto& [n, f] : points) {
                const double d = std::log(f) - std::log(design.f_res_curve(n));
                exp_ss += d * d;
            }
            for (const auto& [n, z] : z_points[gauge]) {
                const double d = z - design.z_max_curve(n);
                lin_ss += d * d;
            }
            std::cout << "gauge " << gauge << ": f_res = " << fmt(design.f_res_curve.prefactor_a)
                      << " * exp(" << fmt(design.f_res_curve.rate_b)
                      << " * N) Hz  [rms log-residual "
                      << fmt(std::sqrt(exp_ss / points.size())) << "]\n"
                      << "gauge " << gauge << ": z_max = " << fmt(design.z_max_curve.slope_m)
                      << " * N + " << fmt(design.z_max_curve.intercept_c)
                      << " ohm  [rms residual " << fmt(std::sqrt(lin_ss / points.size()))
                      << " ohm]\n";
        } catch (const pickup::DegenerateInput& err) {
            std::cerr << "warning: gauge " << gauge << " omitted: " << err.what() << '\n';
        }
    }

    if (table.empty()) {
        std::cerr << "error: no gauge produced a usable curve fit\n";
        return 1;
    }
    pickup::io::save_coefficients(table, output);
    std::cout << "wrote coefficients for " << table.size() << " gauge(s) to "
              << output.string() << '\n';
    return 0;
}

// --- plot ---------------------------------------------------------------------

int cmd_plot(const std::vector<fs::path>& inputs, const fs::path& output, bool log_x,
             bool mark_peaks) {
    std::vector<pickup::io::PlotSeries> series;
    series.reserve(inputs.size());
    for (const auto& path : inputs) {
        pickup::io::PlotSeries s;
        s.spectrum = pickup::io::load_spectrum_csv(path);
        const auto label_it = s.spectrum.metadata.find("label");
        s.label = label_it != s.spectrum.metadata.end() ? label_it->second
                                                        : path.stem().string();
        series.push_back(std::move(s));
    }
    pickup::io::PlotOptions options;
    options.log_x = log_x;
    options.mark_peaks = mark_peaks;
    pickup::io::write_svg_plot(series, options, output);
    std::cout << "wrote " << output.string() << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coil pickup design toolkit: impedance synthesis, resonance "
                 "analysis, and design-curve prediction"};
    app.require_subcommand(1);

    // predict
    auto* predict = app.add_subcommand("predict", "predict a design point from gauge and turns");
    int gauge = 0;
    int turns = 0;
    std::optional<fs::path> geometry_file;
    std::optional<fs::path> coefficients_file;
    bool predict_json = false;
    predict->add_option("--gauge", gauge, "wire gauge (42 or 44 AWG built in)")->required();
    predict->add_option("--turns", turns, "number of turns")
        ->required()
        ->check(CLI::NonNegativeNumber);
    predict->add_option("--geometry", geometry_file, "bobbin geometry key=value file")
        ->check(CLI::ExistingFile);
    predict->add_option("--coefficients", coefficients_file, "replacement coefficient file")
        ->check(CLI::ExistingFile);
    predict->add_flag("--json", predict_json, "emit structured JSON");

    // synth
    auto* synth = app.add_subcommand("synth", "synthesize an impedance spectrum CSV");
    SynthArgs synth_args;
    synth->add_option("--r", synth_args.r, "winding resistance, ohm")->required();
    synth->add_option("--l", synth_args.l, "inductance, henries")->required();
    synth->add_option("--c", synth_args.c, "capacitance, farads")->required();
    synth->add_option("--rv", synth_args.rv, "parallel loss resistance, ohm");
    synth->add_option("--topology", synth_args.topology, "series | parallel (default parallel)")
        ->check(CLI::IsMember({"series", "parallel"}));
    synth->add_option("--f-start", synth_args.sweep.f_start_hz, "sweep start, Hz (default 10)");
    synth->add_option("--f-stop", synth_args.sweep.f_stop_hz, "sweep stop, Hz (default 25000)");
    synth->add_option("--points", synth_args.sweep.n_points, "sweep points (default 1024)");
    synth->add_option("--spacing", synth_args.spacing, "log | linear (default log)")
        ->check(CLI::IsMember({"log", "linear"}));
    synth->add_option("--noise", synth_args.noise_sigma,
                      "relative sigma of multiplicative magnitude noise");
    synth->add_option("--seed", synth_args.seed, "noise seed");
    auto* chain_flag = synth->add_flag("--chain", synth_args.chain_enabled,
                                       "simulate the measurement chain (divider output)");
    synth->add_option("--load-resistor", synth_args.chain.load_resistor_ohm,
                      "series load resistor, ohm (default 200000)")
        ->needs(chain_flag);
    synth->add_option("--cable-capacitance", synth_args.chain.cable_capacitance_f,
                      "cable capacitance, farads (default 0)")
        ->needs(chain_flag);
    synth->add_option("--input-resistance", synth_args.chain.input_resistance_ohm,
                      "analyzer input resistance, ohm")
        ->needs(chain_flag);
    synth->add_option("--tag", synth_args.tags, "extra metadata key=value (repeatable)");
    synth->add_option("-o,--output", synth_args.output, "output CSV path")->required();

    // analyze
    auto* analyze = app.add_subcommand("analyze", "extract resonance descriptors from a CSV");
    fs::path analyze_input;
    bool analyze_fit = false;
    std::string analyze_topology = "parallel";
    bool analyze_json = false;
    analyze->add_option("input", analyze_input, "spectrum CSV")->required()
        ->check(CLI::ExistingFile);
    analyze->add_flag("--fit", analyze_fit, "also fit equivalent (R, L, C)");
    analyze->add_option("--topology", analyze_topology, "fit topology (default parallel)")
        ->check(CLI::IsMember({"series", "parallel"}));
    analyze->add_flag("--json", analyze_json, "emit structured JSON");

    // fit-batch
    auto* fit_batch = app.add_subcommand(
        "fit-batch", "refit per-gauge design curves from tagged spectra");
    fs::path batch_input;
    fs::path batch_output;
    int batch_turns_min = 2000;
    fit_batch->add_option("input", batch_input, "directory of CSVs or manifest file")
        ->required()
        ->check(CLI::ExistingPath);
    fit_batch->add_option("-o,--output", batch_output, "coefficient file to write")->required();
    fit_batch->add_option("--usable-turns-min", batch_turns_min,
                          "practical floor recorded in the output (default 2000)");

    // plot
    auto* plot = app.add_subcommand("plot", "render spectra to a self-contained SVG");
    std::vector<fs::path> plot_inputs;
    fs::path plot_output;
    bool plot_log_x = false;
    bool plot_mark_peaks = false;
    plot->add_option("inputs", plot_inputs, "spectrum CSV files")
        ->required()
        ->check(CLI::ExistingFile);
    plot->add_option("-o,--output", plot_output, "output SVG path")->required();
    plot->add_flag("--log-x", plot_log_x, "logarithmic frequency axis");
    plot->add_flag("--mark-peaks", plot_mark_peaks, "mark each trace's resonant peak");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*predict) {
            return cmd_predict(gauge, turns, geometry_file, coefficients_file, predict_json);
        }
        if (*synth) {
            return cmd_synth(synth_args);
        }
        if (*analyze) {
            return cmd_analyze(analyze_input, analyze_fit, analyze_topology, analyze_json);
        }
        if (*fit_batch) {
            return cmd_fit_batch(batch_input, batch_output, batch_turns_min);
        }
        if (*plot) {
            return cmd_plot(plot_inputs, plot_output, plot_log_x, plot_mark_peaks);
        }
    } catch (const pickup::UnknownGauge& err) {
        std::cerr << "error: unknown gauge: " << err.what() << '\n';
        return 1;
    } catch (const pickup::PeakAtEdge& err) {
        std::cerr << "error: peak at edge: " << err.what() << '\n';
        return 1;
    } catch (const pickup::ParseError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
    return 0;
}
