#include "cov3d/preprocess.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "cov3d/cvol.hpp"
#include "cov3d/error.hpp"
#include "cov3d/resample.hpp"
#include "cov3d/slice_stack.hpp"

namespace cov3d {
namespace fs = std::filesystem;

namespace {

bool has_slice_images(const fs::path& dir) {
    for (const auto& e : fs::directory_iterator(dir)) {
        if (e.is_regular_file() && is_slice_image(e.path())) return true;
    }
    return false;
}

void ensure_writable(const fs::path& root) {
    std::error_code ec;
    fs::create_directories(root, ec);
    if (ec || !fs::is_directory(root)) throw IoError("cannot create output root: " + root.string());
    const auto probe = root / ".cov3d_write_probe";
    {
        std::ofstream out(probe, std::ios::trunc);
        if (!out || !(out << "x")) throw IoError("output root is not writable: " + root.string());
    }
    fs::remove(probe, ec);
}

std::string box_string(const BoundingBox& b) {
    std::ostringstream os;
    os << '[' << b.min[0] << ',' << b.min[1] << ',' << b.min[2] << "]-[" << b.max[0] << ',' << b.max[1] << ','
       << b.max[2] << ']';
    return os.str();
}

}  // namespace

std::string_view status_name(ScanStatus s) {
    switch (s) {
        case ScanStatus::ok: return "ok";
        case ScanStatus::fallback: return "fallback";
        case ScanStatus::skipped: return "skipped";
        case ScanStatus::error: return "error";
    }
    return "?";
}

std::size_t PreprocessReport::count(ScanStatus s) const {
    return static_cast<std::size_t>(
        std::count_if(scans.begin(), scans.end(), [s](const ScanReport& r) { return r.status == s; }));
}

std::vector<std::string> discover_scans(const fs::path& input_root) {
    if (!fs::is_directory(input_root)) throw IoError("input root is not a directory: " + input_root.string());
    std::vector<std::string> ids;
    for (const auto& e : fs::recursive_directory_iterator(input_root)) {
        if (e.is_directory() && has_slice_images(e.path())) {
            ids.push_back(fs::relative(e.path(), input_root).generic_string());
        }
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

fs::path output_path(const JobConfig& cfg, const std::string& scan_id) {
    return cfg.output_root / fs::path(scan_id + ".cvol");
}

ScanReport preprocess_scan(const JobConfig& cfg, const std::string& scan_id) {
    const auto start = std::chrono::steady_clock::now();
    ScanReport r;
    r.scan_id = scan_id;
    const auto out = output_path(cfg, scan_id);

    try {
        if (!cfg.force && fs::exists(out)) {
            r.status = ScanStatus::skipped;
        } else {
            const Volume vol = load_slice_stack(cfg.input_root / fs::path(scan_id));
            r.source_dims = vol.dims();

            BoundingBox box;
            try {
                const Mask mask = segment_lungs(vol, cfg.segmentation);
                r.mask_fraction = static_cast<double>(count_true(mask)) / static_cast<double>(mask.size());
                box = mask_bounding_box(mask, cfg.margin);
            } catch (const SegmentationEmpty& e) {
                r.status = ScanStatus::fallback;
                r.message = e.what();
                box = full_box(vol.dims());
            }
            r.box = box;

            const Volume result = resize(crop(vol, box), cfg.size);

            fs::create_directories(out.parent_path());
            auto tmp = out;
            tmp += ".partial";
            write_volume(result, tmp);
            fs::rename(tmp, out);
        }
    } catch (const std::exception& e) {
        r.status = ScanStatus::error;
        r.message = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

PreprocessReport run_preprocess(const JobConfig& cfg, const std::function<void(const ScanReport&)>& on_scan) {
    if (cfg.jobs < 1) throw Error("worker count must be >= 1");
    if (!cfg.size.valid()) throw Error("target size must be >= 1 on every axis");
    const auto ids = discover_scans(cfg.input_root);
    ensure_writable(cfg.output_root);

    PreprocessReport report;
    report.scans.resize(ids.size());
    std::atomic<std::size_t> next{0};
    std::mutex mu;

    const auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= ids.size()) return;
            ScanReport r = preprocess_scan(cfg, ids[i]);
            std::lock_guard lock(mu);
            if (on_scan) on_scan(r);
            report.scans[i] = std::move(r);
        }
    };

    const std::size_t n = std::min(cfg.jobs, std::max<std::size_t>(ids.size(), 1));
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
    pool.clear();  // joins
    return report;
}

std::string format_scan_line(const ScanReport& r) {
    std::ostringstream os;
    os << r.scan_id << ' ' << status_name(r.status);
    if (r.status == ScanStatus::ok || r.status == ScanStatus::fallback) {
        char frac[32];
        std::snprintf(frac, sizeof frac, "%.6f", r.mask_fraction);
        os << " dims=" << r.source_dims.depth << 'x' << r.source_dims.width << 'x' << r.source_dims.height
           << " mask=" << frac;
        if (r.box) os << " box=" << box_string(*r.box);
    }
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.3f", r.seconds);
    os << " time=" << secs << 's';
    if (!r.message.empty()) os << " msg=\"" << r.message << '"';
    return os.str();
}

std::string format_report(const PreprocessReport& report) {
    std::ostringstream os;
    for (const auto& r : report.scans) os << format_scan_line(r) << '\n';

    nlohmann::json summary;
    summary["scans"] = report.scans.size();
    summary["ok"] = report.count(ScanStatus::ok);
    summary["fallback"] = report.count(ScanStatus::fallback);
    summary["skipped"] = report.count(ScanStatus::skipped);
    summary["error"] = report.count(ScanStatus::error);
    auto& items = summary["items"] = nlohmann::json::array();
    for (const auto& r : report.scans) {
        nlohmann::json item{{"scan_id", r.scan_id}, {"status", status_name(r.status)}, {"seconds", r.seconds}};
        if (r.box) {
            item["mask_fraction"] = r.mask_fraction;
            item["box"] = {{"min", r.box->min}, {"max", r.box->max}};
        }
        if (!r.message.empty()) item["message"] = r.message;
        items.push_back(std::move(item));
    }
    os << "--- summary ---\n" << summary.dump(2) << '\n';
    return os.str();
}

}  // namespace cov3d
