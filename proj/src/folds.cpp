#include "cov3d/folds.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <limits>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "cov3d/delimited.hpp"
#include "cov3d/error.hpp"

namespace cov3d {
namespace {

constexpr int kGroups = 6;

// Unbiased index in [0, bound) from raw generator output. Written out
// rather than using std::uniform_int_distribution so fold files are the
// same across standard library implementations.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

}  // namespace

int balance_group(const CategoryLabel& label) {
    return label.is_positive_unknown() ? 5 : label.category();
}

FoldAssignment make_folds(const std::vector<ScanRecord>& records, std::uint64_t seed) {
    std::unordered_set<std::string> seen;
    std::array<std::vector<std::string>, kGroups> groups;
    std::unordered_map<std::string, int> fold_of;

    for (const auto& r : records) {
        if (!seen.insert(r.scan_id).second) throw Error("duplicate scan_id: " + r.scan_id);
        if (r.partition == Partition::test) continue;
        if (!r.label) throw Error("unknown category for scan " + r.scan_id + " (unlabeled)");
        if (r.partition == Partition::validation) {
            fold_of[r.scan_id] = 0;
        } else {
            groups[static_cast<std::size_t>(balance_group(*r.label))].push_back(r.scan_id);
        }
    }

    std::size_t next_fold = 0;  // 0..3 -> folds 1..4
    for (int g = 0; g < kGroups; ++g) {
        auto& ids = groups[static_cast<std::size_t>(g)];
        std::sort(ids.begin(), ids.end());
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(g)};
        std::mt19937_64 rng(seq);
        for (std::size_t i = ids.size(); i > 1; --i) {
            std::swap(ids[i - 1], ids[bounded(rng, i)]);
        }
        for (const auto& id : ids) {
            fold_of[id] = static_cast<int>(next_fold) + 1;
            next_fold = (next_fold + 1) % (kFoldCount - 1);
        }
    }

    FoldAssignment out;
    for (const auto& r : records) {
        if (auto it = fold_of.find(r.scan_id); it != fold_of.end()) out.entries.emplace_back(r.scan_id, it->second);
    }
    return out;
}

void write_folds(const FoldAssignment& folds, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << "scan_id,fold\n";
    for (const auto& [id, fold] : folds.entries) out << id << ',' << fold << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

FoldAssignment read_folds(const std::filesystem::path& path) {
    const auto table = read_delimited(path, {"scan_id", "fold"});
    FoldAssignment out;
    for (const auto& row : table.rows) {
        if (row.fields.size() != 2) throw FormatError(at_line(path, row.line, "expected 2 columns (scan_id, fold)"));
        int fold = -1;
        const auto& f = row.fields[1];
        auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), fold);
        if (ec != std::errc{} || ptr != f.data() + f.size() || fold < 0 || fold >= kFoldCount) {
            throw FormatError(at_line(path, row.line, "bad fold index '" + f + "'"));
        }
        out.entries.emplace_back(row.fields[0], fold);
    }
    return out;
}

}  // namespace cov3d
