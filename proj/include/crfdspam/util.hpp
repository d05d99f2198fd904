#ifndef CRFDSPAM_UTIL_HPP_
#define CRFDSPAM_UTIL_HPP_

#include <filesystem>
#include <string>
#include <string_view>

namespace crfdspam::util {

// Shortest decimal form that round-trips the exact double.
std::string format_double(double v);

// Quotes a CSV field only when it contains a comma, quote, or newline.
std::string csv_escape(std::string_view field);

// Writes to a temp file in the target directory and renames over the
// destination, so readers never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

}  // namespace crfdspam::util

#endif  // CRFDSPAM_UTIL_HPP_
