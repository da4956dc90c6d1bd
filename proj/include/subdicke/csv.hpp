#pragma once

#include <string>
#include <vector>

namespace subdicke {

/// Formats a double with 12 significant digits in scientific notation;
/// deterministic across platforms for regression-diffable output.
std::string format_sig12(double x);

/// Writes header + rows to path atomically (temp file in the same directory,
/// then rename). Rows are pre-formatted lines without trailing newline.
void write_csv_atomic(const std::string& path, const std::string& header,
                      const std::vector<std::string>& rows);

} // namespace subdicke
