#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cov3d/manifest.hpp"

namespace cov3d {

inline constexpr int kFoldCount = 5;

/// scan_id -> fold in {0..4}; fold 0 is the official validation partition.
/// Entries are kept in manifest order.
struct FoldAssignment {
    std::vector<std::pair<std::string, int>> entries;

    std::map<std::string, int> as_map() const { return {entries.begin(), entries.end()}; }
};

/// The six balancing groups: negative, mild, moderate, severe, critical,
/// positive_unknown. Returns 0..5.
int balance_group(const CategoryLabel& label);

/// Validation records go to fold 0. Training records are grouped by
/// balance_group, each group sorted by scan_id, shuffled with a generator
/// seeded from (seed, group), and dealt round-robin to folds 1..4. Each
/// group's deal starts where the previous one stopped, so fold totals stay
/// within one of each other as well. Test records are ignored.
///
/// Throws Error on a duplicate scan_id or on an unlabeled train/validation
/// record (callers dedupe first; see dedupe_records).
FoldAssignment make_folds(const std::vector<ScanRecord>& records, std::uint64_t seed);

/// Fold file: "scan_id,fold" header, one row per entry.
void write_folds(const FoldAssignment& folds, const std::filesystem::path& path);
FoldAssignment read_folds(const std::filesystem::path& path);

}  // namespace cov3d
