#pragma once

#include <string>
#include <vector>

namespace superad {

/// Shortest round-trip decimal for a double (17 significant digits).
std::string format_double(double v);

/// One CSV row from preformatted cells.
std::string csv_row(const std::vector<std::string>& cells);

/// Writes content atomically (temp file in the same directory + rename).
/// Throws std::invalid_argument when the path is not writable and
/// std::runtime_error on a failed write.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace superad
