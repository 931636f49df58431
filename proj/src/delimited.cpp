#include "cov3d/delimited.hpp"

#include <fstream>

#include "cov3d/error.hpp"

namespace cov3d {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(delim, start);
        out.push_back(trim(line.substr(start, pos == std::string::npos ? std::string::npos : pos - start)));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

}  // namespace

std::string at_line(const std::filesystem::path& path, std::size_t line, const std::string& message) {
    return path.string() + ":" + std::to_string(line) + ": " + message;
}

DelimitedTable read_delimited(const std::filesystem::path& path, const std::vector<std::string>& expected_header) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path.string());

    DelimitedTable table;
    bool delimiter_known = false;
    bool first_row = true;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        if (!delimiter_known) {
            table.delimiter = line.find('\t') != std::string::npos ? '\t' : ',';
            delimiter_known = true;
        }
        auto fields = split(line, table.delimiter);
        if (first_row) {
            first_row = false;
            if (!expected_header.empty() && !fields.empty() && fields[0] == expected_header[0]) {
                table.header = std::move(fields);
                continue;
            }
        }
        table.rows.push_back({lineno, std::move(fields)});
    }
    if (in.bad()) throw IoError("read failed: " + path.string());
    return table;
}

}  // namespace cov3d
