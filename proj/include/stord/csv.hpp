#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace stord
{
//! Shortest round-trip decimal form ("inf", "-inf", "nan" for non-finite).
std::string format_double(double value);

//! Write content to path via a sibling temp file and rename.
void write_file_atomic(std::filesystem::path const& path, std::string_view content);

}  // namespace stord
