#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cov3d/lungseg.hpp"
#include "cov3d/volume.hpp"

namespace cov3d {

struct JobConfig {
    std::filesystem::path input_root;
    std::filesystem::path output_root;
    Dims size;
    SegmentationParams segmentation;
    std::size_t margin = 2;
    std::size_t jobs = 1;
    bool force = false;
};

enum class ScanStatus { ok, fallback, skipped, error };

std::string_view status_name(ScanStatus s);

struct ScanReport {
    std::string scan_id;
    ScanStatus status = ScanStatus::ok;
    Dims source_dims;
    double mask_fraction = 0.0;
    std::optional<BoundingBox> box;
    double seconds = 0.0;
    std::string message;
};

struct PreprocessReport {
    std::vector<ScanReport> scans;  // sorted by scan_id

    std::size_t count(ScanStatus s) const;
};

/// Scan directories are all directories below input_root (recursively) that
/// directly contain slice images. The scan id is the path relative to
/// input_root with '/' separators; output goes to output_root/<scan_id>.cvol.
std::vector<std::string> discover_scans(const std::filesystem::path& input_root);

std::filesystem::path output_path(const JobConfig& cfg, const std::string& scan_id);

/// Processes one scan: load -> segment -> box (full volume on
/// segmentation-empty) -> crop -> resize -> write CVOL. Never throws for
/// per-scan failures; they come back as ScanStatus::error.
ScanReport preprocess_scan(const JobConfig& cfg, const std::string& scan_id);

/// Runs preprocess_scan over every discovered scan with `cfg.jobs` workers.
/// Throws IoError if the output root cannot be created or written (fatal).
/// `on_scan` is called once per finished scan, serialized by a mutex.
PreprocessReport run_preprocess(const JobConfig& cfg,
                                const std::function<void(const ScanReport&)>& on_scan = {});

/// One line per scan.
std::string format_scan_line(const ScanReport& r);

/// Per-scan lines followed by a JSON summary block.
std::string format_report(const PreprocessReport& report);

}  // namespace cov3d
