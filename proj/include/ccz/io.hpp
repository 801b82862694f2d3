#pragma once

#include <filesystem>

#include "ccz/types.hpp"

namespace ccz {

// Both throw std::runtime_error naming the path on failure.
Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, ByteView data);

}  // namespace ccz
