#include "cov3d/resample.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace cov3d {
namespace {

struct Grid {
    std::array<std::size_t, 3> ext;
    std::vector<double> data;

    std::array<std::size_t, 3> strides() const { return {ext[1] * ext[2], ext[2], 1}; }
};

void smooth_axis(Grid& g, int axis, double sigma) {
    const auto kernel = gaussian_kernel(sigma);
    const auto radius = static_cast<std::ptrdiff_t>(kernel.size() / 2);
    const auto st = g.strides();
    const std::size_t n = g.ext[axis];
    const int a = (axis + 1) % 3;
    const int b = (axis + 2) % 3;
    std::vector<double> line(n);
    for (std::size_t i = 0; i < g.ext[a]; ++i) {
        for (std::size_t j = 0; j < g.ext[b]; ++j) {
            const std::size_t base = i * st[a] + j * st[b];
            for (std::size_t k = 0; k < n; ++k) line[k] = g.data[base + k * st[axis]];
            for (std::size_t k = 0; k < n; ++k) {
                double acc = 0.0;
                for (std::ptrdiff_t t = -radius; t <= radius; ++t) {
                    auto src = static_cast<std::ptrdiff_t>(k) + t;
                    src = std::clamp<std::ptrdiff_t>(src, 0, static_cast<std::ptrdiff_t>(n) - 1);
                    acc += kernel[static_cast<std::size_t>(t + radius)] * line[static_cast<std::size_t>(src)];
                }
                g.data[base + k * st[axis]] = acc;
            }
        }
    }
}

Grid interpolate_axis(const Grid& g, int axis, std::size_t target) {
    Grid out{g.ext, {}};
    out.ext[axis] = target;
    out.data.resize(out.ext[0] * out.ext[1] * out.ext[2]);

    const std::size_t n = g.ext[axis];
    const double scale = static_cast<double>(n) / static_cast<double>(target);

    std::vector<std::size_t> lo(target), hi(target);
    std::vector<double> frac(target);
    for (std::size_t k = 0; k < target; ++k) {
        double x = (static_cast<double>(k) + 0.5) * scale - 0.5;
        x = std::clamp(x, 0.0, static_cast<double>(n - 1));
        const double f = std::floor(x);
        lo[k] = static_cast<std::size_t>(f);
        hi[k] = std::min(lo[k] + 1, n - 1);
        frac[k] = x - f;
    }

    const auto sst = g.strides();
    const auto dst = out.strides();
    const int a = (axis + 1) % 3;
    const int b = (axis + 2) % 3;
    for (std::size_t i = 0; i < g.ext[a]; ++i) {
        for (std::size_t j = 0; j < g.ext[b]; ++j) {
            const std::size_t sbase = i * sst[a] + j * sst[b];
            const std::size_t dbase = i * dst[a] + j * dst[b];
            for (std::size_t k = 0; k < target; ++k) {
                const double v0 = g.data[sbase + lo[k] * sst[axis]];
                const double v1 = g.data[sbase + hi[k] * sst[axis]];
                out.data[dbase + k * dst[axis]] = frac[k] == 0.0 ? v0 : v0 + frac[k] * (v1 - v0);
            }
        }
    }
    return out;
}

}  // namespace

Dims standard_dims(StandardSize s) {
    switch (s) {
        case StandardSize::small: return {64, 128, 128};
        case StandardSize::medium: return {256, 256, 176};
        case StandardSize::large: return {320, 320, 224};
    }
    throw std::invalid_argument("unknown standard size");
}

std::optional<StandardSize> parse_standard_size(std::string_view name) {
    if (name == "small") return StandardSize::small;
    if (name == "medium") return StandardSize::medium;
    if (name == "large") return StandardSize::large;
    return std::nullopt;
}

std::vector<double> gaussian_kernel(double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_kernel: sigma must be > 0");
    const auto radius = static_cast<std::size_t>(std::ceil(4.0 * sigma));
    std::vector<double> k(2 * radius + 1);
    double sum = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i) {
        const double x = static_cast<double>(i) - static_cast<double>(radius);
        k[i] = std::exp(-0.5 * x * x / (sigma * sigma));
        sum += k[i];
    }
    for (double& w : k) w /= sum;
    return k;
}

std::vector<double> resize_values(const Volume& v, const Dims& target) {
    if (!target.valid()) throw std::invalid_argument("resize: target dimensions must be >= 1");
    if (!v.dims().valid()) throw std::invalid_argument("resize: source volume is empty");

    Grid g{{v.depth(), v.width(), v.height()}, {}};
    const auto src = v.values();
    g.data.assign(src.begin(), src.end());

    const std::array<std::size_t, 3> want = {target.depth, target.width, target.height};
    for (int axis = 0; axis < 3; ++axis) {
        const double s = static_cast<double>(g.ext[axis]) / static_cast<double>(want[axis]);
        if (s > 1.0) smooth_axis(g, axis, (s - 1.0) / 2.0);
        if (g.ext[axis] != want[axis]) g = interpolate_axis(g, axis, want[axis]);
    }

    return std::move(g.data);
}

Volume resize(const Volume& v, const Dims& target) {
    const auto values = resize_values(v, target);
    Volume out(target);
    auto dst = out.values();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = static_cast<float>(values[i]);
    return out;
}

}  // namespace cov3d
