#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pickup/spectrum.hpp"

namespace pickup::io {

struct PlotSeries {
    std::string label;
    ImpedanceSpectrum spectrum;
};

struct PlotOptions {
    bool log_x = false;
    bool mark_peaks = false;
    int width = 860;
    int height = 520;
};

/// Self-contained SVG of magnitude vs frequency, one labelled polyline per
/// series. Output is byte-deterministic for identical inputs. Peak markers
/// come from find_resonant_peak; series whose peak sits on an edge simply
/// get no marker.
void write_svg_plot(const std::vector<PlotSeries>& series, const PlotOptions& options,
                    std::ostream& out);
void write_svg_plot(const std::vector<PlotSeries>& series, const PlotOptions& options,
                    const std::filesystem::path& path);

} // namespace pickup::io
