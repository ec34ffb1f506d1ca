#include "pickup/io/coefficient_file.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "pickup/errors.hpp"
#include "pickup/io/atomic_file.hpp"

namespace pickup::io {

namespace {

std::string format_double(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::string trim(const std::string& text) {
    const auto first = text.find_first_not_of(" \t");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = text.find_last_not_of(" \t");
    return text.substr(first, last - first + 1);
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

GaugeDesign build_design(int gauge, const std::map<std::string, double>& fields) {
    const auto need = [&](const char* key) {
        const auto it = fields.find(key);
        if (it == fields.end()) {
            throw ParseError("gauge " + std::to_string(gauge) + ": missing key '" +
                             key + "'");
        }
        return it->second;
    };
    GaugeDesign design;
    design.f_res_curve.prefactor_a = need("f_res_prefactor_a_hz");
    design.f_res_curve.rate_b = need("f_res_rate_b_per_turn");
    design.z_max_curve.slope_m = need("z_max_slope_ohm_per_turn");
    design.z_max_curve.intercept_c = need("z_max_intercept_ohm");
    design.usable_turns_min = static_cast<int>(need("usable_turns_min"));
    if (design.f_res_curve.prefactor_a <= 0.0) {
        throw ParseError("gauge " + std::to_string(gauge) +
                         ": f_res_prefactor_a_hz must be > 0");
    }
    return design;
}

} // namespace

void save_coefficients(const GaugeDesignTable& table, std::ostream& out) {
    out << "# coil design curve coefficients\n"
        << "# f_res(N) = a * exp(b*N); z_max(N) = m * N + c\n";
    for (const auto& [gauge, design] : table) {
        out << "\n[gauge " << gauge << "]\n"
            << "f_res_prefactor_a_hz     = " << format_double(design.f_res_curve.prefactor_a) << '\n'
            << "f_res_rate_b_per_turn    = " << format_double(design.f_res_curve.rate_b) << '\n'
            << "z_max_slope_ohm_per_turn = " << format_double(design.z_max_curve.slope_m) << '\n'
            << "z_max_intercept_ohm      = " << format_double(design.z_max_curve.intercept_c) << '\n'
            << "usable_turns_min         = " << design.usable_turns_min << '\n';
    }
}

void save_coefficients(const GaugeDesignTable& table, const std::filesystem::path& path) {
    std::ostringstream buffer;
    save_coefficients(table, buffer);
    write_file_atomic(path, buffer.str());
}

GaugeDesignTable load_coefficients(std::istream& in) {
    GaugeDesignTable table;
    std::optional<int> current_gauge;
    std::map<std::string, double> fields;
    std::string line;
    int line_no = 0;

    const auto flush_section = [&]() {
        if (current_gauge) {
            table[*current_gauge] = build_design(*current_gauge, fields);
            fields.clear();
        }
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ParseError("line " + std::to_string(line_no) + ": unterminated section");
            }
            std::istringstream section(line.substr(1, line.size() - 2));
            std::string word;
            int gauge = 0;
            if (!(section >> word >> gauge) || word != "gauge") {
                throw ParseError("line " + std::to_string(line_no) +
                                 ": expected section '[gauge <awg>]'");
            }
            flush_section();
            current_gauge = gauge;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos || !current_gauge) {
            throw ParseError("line " + std::to_string(line_no) + ": expected 'key = value' "
                             "inside a [gauge ...] section");
        }
        fields[trim(line.substr(0, eq))] = parse_double(trim(line.substr(eq + 1)), line_no);
    }
    flush_section();
    if (table.empty()) {
        throw ParseError("coefficient file contains no gauge sections");
    }
    return table;
}

GaugeDesignTable load_coefficients(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open " + path.string());
    }
    return load_coefficients(in);
}

} // namespace pickup::io
