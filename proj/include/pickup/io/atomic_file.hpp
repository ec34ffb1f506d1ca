#pragma once

#include <filesystem>
#include <string>

namespace pickup::io {

/// Writes content to a sibling temp file and renames it into place, so a
/// crashed or interrupted run never leaves a half-written output.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

} // namespace pickup::io
