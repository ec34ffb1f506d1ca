#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace pickup {

struct SpectrumSample {
    double frequency_hz = 0.0;
    std::complex<double> z_ohm{};

    double magnitude() const { return std::abs(z_ohm); }

    bool operator==(const SpectrumSample&) const = default;
};

/// Ordered (frequency, complex impedance) samples plus a free-form label map.
/// Frequencies are strictly increasing and there are at least two samples.
struct ImpedanceSpectrum {
    std::vector<SpectrumSample> samples;
    std::map<std::string, std::string> metadata;

    bool operator==(const ImpedanceSpectrum&) const = default;
};

/// Throws std::invalid_argument if the spectrum invariants do not hold.
void validate_spectrum(const ImpedanceSpectrum& spectrum);

} // namespace pickup
