#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace cov3d {

/// One data row of a delimited text file, with its 1-based source line.
struct DelimitedRow {
    std::size_t line = 0;
    std::vector<std::string> fields;
};

struct DelimitedTable {
    std::vector<std::string> header;
    std::vector<DelimitedRow> rows;
    char delimiter = ',';
};

/// Reads a comma- or tab-separated file. The delimiter is taken from the
/// first non-empty line (tab if present, otherwise comma). Fields are
/// whitespace-trimmed; blank lines and lines starting with '#' are skipped.
/// If `expected_header` is nonempty the first row is treated as a header when
/// its first field matches expected_header[0]; otherwise there is no header.
DelimitedTable read_delimited(const std::filesystem::path& path,
                              const std::vector<std::string>& expected_header = {});

/// "path:line: message"
std::string at_line(const std::filesystem::path& path, std::size_t line, const std::string& message);

}  // namespace cov3d
