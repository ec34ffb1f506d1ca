#include "pickup/io/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "pickup/analysis.hpp"
#include "pickup/errors.hpp"
#include "pickup/io/atomic_file.hpp"

namespace pickup::io {

namespace {

constexpr int k_margin_left = 70;
constexpr int k_margin_right = 20;
constexpr int k_margin_top = 20;
constexpr int k_margin_bottom = 50;

const char* k_palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                           "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double value, const char* spec = "%.2f") {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), spec, value);
    return buffer;
}

std::string xml_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Mapper {
    bool log_x;
    double x_min, x_max, y_max;
    double plot_w, plot_h;

    double x(double f) const {
        const double t = log_x ? (std::log10(f) - std::log10(x_min)) /
                                     (std::log10(x_max) - std::log10(x_min))
                               : (f - x_min) / (x_max - x_min);
        return k_margin_left + t * plot_w;
    }
    double y(double mag) const {
        return k_margin_top + (1.0 - mag / y_max) * plot_h;
    }
};

} // namespace

void write_svg_plot(const std::vector<PlotSeries>& series, const PlotOptions& options,
                    std::ostream& out) {
    if (series.empty()) {
        throw std::invalid_argument("plot needs at least one series");
    }
    double x_min = 0.0;
    double x_max = 0.0;
    double y_max = 0.0;
    bool first = true;
    for (const auto& s : series) {
        validate_spectrum(s.spectrum);
        const double lo = s.spectrum.samples.front().frequency_hz;
        const double hi = s.spectrum.samples.back().frequency_hz;
        x_min = first ? lo : std::min(x_min, lo);
        x_max = first ? hi : std::max(x_max, hi);
        first = false;
        for (const auto& sample : s.spectrum.samples) {
            y_max = std::max(y_max, sample.magnitude());
        }
    }
    if (y_max <= 0.0) {
        y_max = 1.0;
    }
    y_max *= 1.05;

    const Mapper map{options.log_x, x_min, x_max, y_max,
                     static_cast<double>(options.width - k_margin_left - k_margin_right),
                     static_cast<double>(options.height - k_margin_top - k_margin_bottom)};
    const double axis_bottom = k_margin_top + map.plot_h;

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width
        << "\" height=\"" << options.height << "\" viewBox=\"0 0 " << options.width
        << ' ' << options.height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // axes
    out << "<g stroke=\"black\" stroke-width=\"1\">\n"
        << "<line x1=\"" << k_margin_left << "\" y1=\"" << k_margin_top << "\" x2=\""
        << k_margin_left << "\" y2=\"" << fmt(axis_bottom) << "\"/>\n"
        << "<line x1=\"" << k_margin_left << "\" y1=\"" << fmt(axis_bottom) << "\" x2=\""
        << fmt(k_margin_left + map.plot_w) << "\" y2=\"" << fmt(axis_bottom) << "\"/>\n"
        << "</g>\n";

    // x ticks: decades when logarithmic, six even steps otherwise
    out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
    if (options.log_x) {
        const int dec_lo = static_cast<int>(std::ceil(std::log10(x_min) - 1e-9));
        const int dec_hi = static_cast<int>(std::floor(std::log10(x_max) + 1e-9));
        for (int d = dec_lo; d <= dec_hi; ++d) {
            const double f = std::pow(10.0, d);
            const double px = map.x(f);
            out << "<line stroke=\"black\" x1=\"" << fmt(px) << "\" y1=\"" << fmt(axis_bottom)
                << "\" x2=\"" << fmt(px) << "\" y2=\"" << fmt(axis_bottom + 5) << "\"/>\n"
                << "<text x=\"" << fmt(px) << "\" y=\"" << fmt(axis_bottom + 18)
                << "\" text-anchor=\"middle\">" << fmt(f, "%g") << "</text>\n";
        }
    } else {
        for (int i = 0; i <= 5; ++i) {
            const double f = x_min + (x_max - x_min) * i / 5.0;
            const double px = map.x(f);
            out << "<line stroke=\"black\" x1=\"" << fmt(px) << "\" y1=\"" << fmt(axis_bottom)
                << "\" x2=\"" << fmt(px) << "\" y2=\"" << fmt(axis_bottom + 5) << "\"/>\n"
                << "<text x=\"" << fmt(px) << "\" y=\"" << fmt(axis_bottom + 18)
                << "\" text-anchor=\"middle\">" << fmt(f, "%.4g") << "</text>\n";
        }
    }
    for (int i = 0; i <= 5; ++i) {
        const double mag = y_max * i / 5.0;
        const double py = map.y(mag);
        out << "<line stroke=\"black\" x1=\"" << fmt(k_margin_left - 5.0) << "\" y1=\""
            << fmt(py) << "\" x2=\"" << k_margin_left << "\" y2=\"" << fmt(py) << "\"/>\n"
            << "<text x=\"" << fmt(k_margin_left - 8.0) << "\" y=\"" << fmt(py + 4)
            << "\" text-anchor=\"end\">" << fmt(mag, "%.3g") << "</text>\n";
    }
    out << "<text x=\"" << fmt(k_margin_left + map.plot_w / 2) << "\" y=\""
        << fmt(axis_bottom + 36) << "\" text-anchor=\"middle\">frequency (Hz)</text>\n"
        << "<text x=\"16\" y=\"" << fmt(k_margin_top + map.plot_h / 2)
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << fmt(k_margin_top + map.plot_h / 2) << ")\">|Z| (ohm)</text>\n"
        << "</g>\n";

    // traces
    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = k_palette[i % (sizeof(k_palette) / sizeof(k_palette[0]))];
        out << "<path fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" d=\"";
        bool first_point = true;
        for (const auto& sample : series[i].spectrum.samples) {
            out << (first_point ? 'M' : 'L') << fmt(map.x(sample.frequency_hz)) << ' '
                << fmt(map.y(sample.magnitude()));
            first_point = false;
        }
        out << "\"/>\n";
    }

    // peak markers
    if (options.mark_peaks) {
        for (std::size_t i = 0; i < series.size(); ++i) {
            const char* color = k_palette[i % (sizeof(k_palette) / sizeof(k_palette[0]))];
            try {
                const ResonanceSummary peak = find_resonant_peak(series[i].spectrum);
                out << "<circle cx=\"" << fmt(map.x(peak.f_res_hz)) << "\" cy=\""
                    << fmt(map.y(peak.z_max_ohm)) << "\" r=\"4\" fill=\"none\" stroke=\""
                    << color << "\" stroke-width=\"1.5\"/>\n";
            } catch (const PeakAtEdge&) {
                // no interior peak, nothing to mark
            }
        }
    }

    // legend
    out << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = k_palette[i % (sizeof(k_palette) / sizeof(k_palette[0]))];
        const double ly = k_margin_top + 8.0 + 18.0 * static_cast<double>(i);
        out << "<rect x=\"" << fmt(k_margin_left + map.plot_w - 150) << "\" y=\"" << fmt(ly - 9)
            << "\" width=\"12\" height=\"12\" fill=\"" << color << "\"/>\n"
            << "<text x=\"" << fmt(k_margin_left + map.plot_w - 133) << "\" y=\"" << fmt(ly + 1)
            << "\">" << xml_escape(series[i].label) << "</text>\n";
    }
    out << "</g>\n</svg>\n";
}

void write_svg_plot(const std::vector<PlotSeries>& series, const PlotOptions& options,
                    const std::filesystem::path& path) {
    std::ostringstream buffer;
    write_svg_plot(series, options, buffer);
    write_file_atomic(path, buffer.str());
}

} // namespace pickup::io
