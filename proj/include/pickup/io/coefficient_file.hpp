#pragma once

#include <filesystem>
#include <iosfwd>

#include "pickup/regression.hpp"

namespace pickup::io {

/// Human-editable coefficient sets, one `[gauge N]` section per gauge:
///
///   [gauge 42]
///   f_res_prefactor_a_hz     = 33300
///   f_res_rate_b_per_turn    = -0.000114
///   z_max_slope_ohm_per_turn = 121
///   z_max_intercept_ohm      = -36300
///   usable_turns_min         = 2000
///
/// `#` starts a comment. Values are written with 17 significant digits.
void save_coefficients(const GaugeDesignTable& table, std::ostream& out);
void save_coefficients(const GaugeDesignTable& table, const std::filesystem::path& path);

/// Throws ParseError on malformed files or incomplete gauge sections.
GaugeDesignTable load_coefficients(std::istream& in);
GaugeDesignTable load_coefficients(const std::filesystem::path& path);

} // namespace pickup::io
