#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cov3d/category.hpp"

namespace cov3d {

enum class Partition { train, validation, test };

Partition parse_partition(std::string_view text);
std::string_view partition_name(Partition p);

struct ScanRecord {
    std::string scan_id;
    Partition partition = Partition::train;
    std::optional<CategoryLabel> label;  // nullopt = unlabeled

    friend bool operator==(const ScanRecord&, const ScanRecord&) = default;
};

/// Dataset manifest: delimited text with columns scan_id, partition, label.
/// A header row starting with "scan_id" is optional. Rows are returned in file
/// order; duplicates are kept (see dedupe_records). Format errors carry
/// the line number.
std::vector<ScanRecord> read_manifest(const std::filesystem::path& path);
void write_manifest(const std::vector<ScanRecord>& records, const std::filesystem::path& path);

/// Drops repeated scan_ids, keeping the first occurrence. Returns the number
/// of rows removed.
std::size_t dedupe_records(std::vector<ScanRecord>& records);

}  // namespace cov3d
