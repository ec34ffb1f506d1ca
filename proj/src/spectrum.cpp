#include "pickup/spectrum.hpp"

#include <stdexcept>

namespace pickup {

void validate_spectrum(const ImpedanceSpectrum& spectrum) {
    if (spectrum.samples.size() < 2) {
        throw std::invalid_argument("spectrum needs at least 2 samples");
    }
    for (std::size_t i = 1; i < spectrum.samples.size(); ++i) {
        if (!(spectrum.samples[i - 1].frequency_hz < spectrum.samples[i].frequency_hz)) {
            throw std::invalid_argument("spectrum frequencies must be strictly increasing");
        }
    }
}

} // namespace pickup
