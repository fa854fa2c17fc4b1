#pragma once

#include <filesystem>
#include <span>

#include "vsem/ciphers.hpp"

namespace vsem {

/// Throws IoError.
Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
/// Writes to a sibling temporary file and renames it over the target.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace vsem
