#include "cov3d/slice_stack.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "cov3d/error.hpp"

namespace cov3d {
namespace {

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

// -1, 0, 1
int natural_compare(std::string_view a, std::string_view b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (is_digit(a[i]) && is_digit(b[j])) {
            std::size_t ie = i, je = j;
            while (ie < a.size() && is_digit(a[ie])) ++ie;
            while (je < b.size() && is_digit(b[je])) ++je;
            auto da = a.substr(i, ie - i);
            auto db = b.substr(j, je - j);
            da.remove_prefix(std::min(da.find_first_not_of('0'), da.size()));
            db.remove_prefix(std::min(db.find_first_not_of('0'), db.size()));
            if (da.size() != db.size()) return da.size() < db.size() ? -1 : 1;
            if (int c = da.compare(db); c != 0) return c < 0 ? -1 : 1;
            i = ie;
            j = je;
        } else {
            const auto ca = static_cast<unsigned char>(a[i]);
            const auto cb = static_cast<unsigned char>(b[j]);
            if (ca != cb) return ca < cb ? -1 : 1;
            ++i;
            ++j;
        }
    }
    const bool a_done = i == a.size();
    const bool b_done = j == b.size();
    if (a_done && b_done) return 0;
    return a_done ? -1 : 1;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

}  // namespace

bool natural_less(std::string_view a, std::string_view b) { return natural_compare(a, b) < 0; }

bool is_slice_image(const std::filesystem::path& p) {
    static constexpr std::array<std::string_view, 10> kExt = {
        ".jpg", ".jpeg", ".png", ".bmp", ".tif", ".tiff", ".pgm", ".ppm", ".pbm", ".pnm"};
    const auto ext = lower(p.extension().string());
    return std::find(kExt.begin(), kExt.end(), ext) != kExt.end();
}

std::vector<std::filesystem::path> list_slice_files(const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && is_slice_image(entry.path())) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
        return natural_less(a.filename().string(), b.filename().string());
    });
    for (std::size_t i = 1; i < files.size(); ++i) {
        const auto a = files[i - 1].filename().string();
        const auto b = files[i].filename().string();
        if (natural_compare(a, b) == 0) {
            throw Error("ambiguous slice order: '" + a + "' and '" + b + "' in " + dir.string());
        }
    }
    return files;
}

Volume load_slice_stack(const std::filesystem::path& dir) {
    const auto files = list_slice_files(dir);
    if (files.empty()) throw Error("no slice images in directory: " + dir.string());

    Volume vol;
    for (std::size_t d = 0; d < files.size(); ++d) {
        const auto& file = files[d];
        cv::Mat img = cv::imread(file.string(), cv::IMREAD_UNCHANGED);
        if (img.empty()) throw Error("cannot decode slice image: " + file.string());

        double scale = 0.0;
        switch (img.depth()) {
            case CV_8U: scale = 1.0 / 255.0; break;
            case CV_16U: scale = 1.0 / 65535.0; break;
            default: throw Error("unsupported pixel depth in slice image: " + file.string());
        }
        const int channels = img.channels();
        if (channels != 1 && channels != 3 && channels != 4) {
            throw Error("unsupported channel count in slice image: " + file.string());
        }

        const auto rows = static_cast<std::size_t>(img.rows);
        const auto cols = static_cast<std::size_t>(img.cols);
        if (d == 0) {
            vol = Volume(Dims{files.size(), cols, rows});
        } else if (cols != vol.width() || rows != vol.height()) {
            throw Error("slice dimensions " + std::to_string(cols) + "x" + std::to_string(rows) +
                        " differ from " + std::to_string(vol.width()) + "x" + std::to_string(vol.height()) +
                        ": " + file.string());
        }

        cv::Mat gray;
        img.convertTo(gray, CV_MAKETYPE(CV_64F, channels), scale);
        for (int r = 0; r < img.rows; ++r) {
            const double* row = gray.ptr<double>(r);
            for (int c = 0; c < img.cols; ++c) {
                double value;
                if (channels == 1) {
                    value = row[c];
                } else {
                    // OpenCV decodes colour as BGR(A)
                    const double* px = row + static_cast<std::ptrdiff_t>(c) * channels;
                    value = 0.299 * px[2] + 0.587 * px[1] + 0.114 * px[0];
                }
                vol(d, static_cast<std::size_t>(c), static_cast<std::size_t>(r)) =
                    static_cast<float>(std::clamp(value, 0.0, 1.0));
            }
        }
    }
    return vol;
}

}  // namespace cov3d
