#include "pickup/io/atomic_file.hpp"

#include <fstream>
#include <stdexcept>

namespace pickup::io {

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path temp = path;
    temp += ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open " + temp.string() + " for writing");
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            throw std::runtime_error("write failed for " + temp.string());
        }
    }
    std::filesystem::rename(temp, path);
}

} // namespace pickup::io
