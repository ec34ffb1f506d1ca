#include "pickup/io/spectrum_csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "pickup/errors.hpp"
#include "pickup/io/atomic_file.hpp"

namespace pickup::io {

namespace {

constexpr const char* k_header = "frequency_hz,z_real_ohm,z_imag_ohm";

std::string format_double(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

double parse_double(const std::string& text, int line_no) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        throw ParseError("line " + std::to_string(line_no) + ": bad number '" + text + "'");
    }
    return value;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    return line;
}

} // namespace

void save_spectrum_csv(const ImpedanceSpectrum& spectrum, std::ostream& out) {
    validate_spectrum(spectrum);
    for (const auto& [key, value] : spectrum.metadata) {
        if (key.find('=') != std::string::npos || key.find('\n') != std::string::npos ||
            value.find('\n') != std::string::npos) {
            throw std::invalid_argument("metadata keys must not contain '=' and "
                                        "entries must be single-line");
        }
        out << "# " << key << '=' << value << '\n';
    }
    out << k_header << '\n';
    for (const auto& sample : spectrum.samples) {
        out << format_double(sample.frequency_hz) << ','
            << format_double(sample.z_ohm.real()) << ','
            << format_double(sample.z_ohm.imag()) << '\n';
    }
}

void save_spectrum_csv(const ImpedanceSpectrum& spectrum, const std::filesystem::path& path) {
    std::ostringstream buffer;
    save_spectrum_csv(spectrum, buffer);
    write_file_atomic(path, buffer.str());
}

ImpedanceSpectrum load_spectrum_csv(std::istream& in) {
    ImpedanceSpectrum spectrum;
    std::string line;
    int line_no = 0;
    bool header_seen = false;

    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            if (header_seen) {
                throw ParseError("line " + std::to_string(line_no) +
                                 ": metadata comments must precede the header");
            }
            std::string entry = line.substr(1);
            if (!entry.empty() && entry.front() == ' ') {
                entry.erase(0, 1);
            }
            const auto eq = entry.find('=');
            if (eq == std::string::npos) {
                throw ParseError("line " + std::to_string(line_no) +
                                 ": metadata comment is not key=value");
            }
            spectrum.metadata[entry.substr(0, eq)] = entry.substr(eq + 1);
            continue;
        }
        if (!header_seen) {
            if (line != k_header) {
                throw ParseError("line " + std::to_string(line_no) +
                                 ": expected header '" + std::string(k_header) + "'");
            }
            header_seen = true;
            continue;
        }
        std::istringstream row(line);
        std::string field;
        double values[3];
        for (int i = 0; i < 3; ++i) {
            if (!std::getline(row, field, ',')) {
                throw ParseError("line " + std::to_string(line_no) + ": expected 3 fields");
            }
            values[i] = parse_double(field, line_no);
        }
        if (std::getline(row, field, ',')) {
            throw ParseError("line " + std::to_string(line_no) + ": expected 3 fields");
        }
        spectrum.samples.push_back({values[0], {values[1], values[2]}});
    }

    if (!header_seen) {
        throw ParseError("missing header row");
    }
    try {
        validate_spectrum(spectrum);
    } catch (const std::invalid_argument& err) {
        throw ParseError(err.what());
    }
    return spectrum;
}

ImpedanceSpectrum load_spectrum_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open " + path.string());
    }
    return load_spectrum_csv(in);
}

} // namespace pickup::io
