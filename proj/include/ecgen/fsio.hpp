#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace ecgen::fsio {

std::string read_text(const std::filesystem::path& path);
std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path);

// Write to a sibling temp file, then rename over the target. The rename makes
// the file appear complete or not at all.
void write_bytes_atomic(const std::filesystem::path& path, const void* data, std::size_t size);
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace ecgen::fsio
