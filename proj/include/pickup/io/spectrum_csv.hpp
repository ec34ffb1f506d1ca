#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "pickup/spectrum.hpp"

namespace pickup::io {

/// CSV layout: optional `# key=value` metadata comment lines, then the
/// header `frequency_hz,z_real_ohm,z_imag_ohm`, then one row per sample.
/// Values carry 17 significant digits so load(save(x)) == x exactly.
void save_spectrum_csv(const ImpedanceSpectrum& spectrum, std::ostream& out);
void save_spectrum_csv(const ImpedanceSpectrum& spectrum, const std::filesystem::path& path);

/// Throws ParseError on malformed input or violated spectrum invariants.
ImpedanceSpectrum load_spectrum_csv(std::istream& in);
ImpedanceSpectrum load_spectrum_csv(const std::filesystem::path& path);

} // namespace pickup::io
