#include "cov3d/manifest.hpp"

#include <fstream>
#include <unordered_set>

#include "cov3d/delimited.hpp"
#include "cov3d/error.hpp"

namespace cov3d {

std::optional<CategoryLabel> parse_label(std::string_view text) {
    if (text == "negative") return CategoryLabel::full(category::kNegative);
    if (text == "mild") return CategoryLabel::full(category::kMild);
    if (text == "moderate") return CategoryLabel::full(category::kModerate);
    if (text == "severe") return CategoryLabel::full(category::kSevere);
    if (text == "critical") return CategoryLabel::full(category::kCritical);
    if (text == "positive_unknown") return CategoryLabel::positive_unknown();
    if (text == "unlabeled") return std::nullopt;
    throw FormatError("unknown label '" + std::string(text) + "'");
}

std::string severity_name(int c) {
    switch (c) {
        case category::kNegative: return "negative";
        case category::kMild: return "mild";
        case category::kModerate: return "moderate";
        case category::kSevere: return "severe";
        case category::kCritical: return "critical";
        default: throw Error("category index out of range: " + std::to_string(c));
    }
}

std::string label_name(const std::optional<CategoryLabel>& label) {
    if (!label) return "unlabeled";
    if (label->is_positive_unknown()) return "positive_unknown";
    return severity_name(label->category());
}

Partition parse_partition(std::string_view text) {
    if (text == "train") return Partition::train;
    if (text == "validation") return Partition::validation;
    if (text == "test") return Partition::test;
    throw FormatError("unknown partition '" + std::string(text) + "'");
}

std::string_view partition_name(Partition p) {
    switch (p) {
        case Partition::train: return "train";
        case Partition::validation: return "validation";
        case Partition::test: return "test";
    }
    return "?";
}

std::vector<ScanRecord> read_manifest(const std::filesystem::path& path) {
    const auto table = read_delimited(path, {"scan_id", "partition", "label"});
    std::vector<ScanRecord> records;
    records.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        if (row.fields.size() != 3) {
            throw FormatError(at_line(path, row.line, "expected 3 columns (scan_id, partition, label), got " +
                                                          std::to_string(row.fields.size())));
        }
        if (row.fields[0].empty()) throw FormatError(at_line(path, row.line, "empty scan_id"));
        try {
            records.push_back({row.fields[0], parse_partition(row.fields[1]), parse_label(row.fields[2])});
        } catch (const FormatError& e) {
            throw FormatError(at_line(path, row.line, e.what()));
        }
    }
    return records;
}

void write_manifest(const std::vector<ScanRecord>& records, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << "scan_id,partition,label\n";
    for (const auto& r : records) {
        out << r.scan_id << ',' << partition_name(r.partition) << ',' << label_name(r.label) << '\n';
    }
    if (!out) throw IoError("write failed: " + path.string());
}

std::size_t dedupe_records(std::vector<ScanRecord>& records) {
    std::unordered_set<std::string> seen;
    std::vector<ScanRecord> kept;
    kept.reserve(records.size());
    for (auto& r : records) {
        if (seen.insert(r.scan_id).second) kept.push_back(std::move(r));
    }
    const auto removed = records.size() - kept.size();
    records = std::move(kept);
    return removed;
}

}  // namespace cov3d
