#pragma once

#include <filesystem>
#include <string>

#include "memguard/errors.hpp"

namespace memguard {

/// Whole-file read. Throws `code` when the file cannot be opened.
std::string read_file(const std::filesystem::path& path, ErrorCode code = ErrorCode::io_failure);

/// Temp-file-plus-rename write so readers never observe a partial file.
/// Returns the byte count written.
std::size_t write_file_atomic(const std::filesystem::path& path, const std::string& content,
                              ErrorCode code = ErrorCode::io_failure);

}  // namespace memguard
