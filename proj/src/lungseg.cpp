#include "cov3d/lungseg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cov3d/error.hpp"
#include "cov3d/morphology.hpp"

namespace cov3d {
namespace {

template <typename T>
Grid3<T> crop_grid(const Grid3<T>& g, const BoundingBox& b) {
    const std::array<std::size_t, 3> ext = {g.depth(), g.width(), g.height()};
    for (int a = 0; a < 3; ++a) {
        if (b.min[a] > b.max[a] || b.max[a] >= ext[a]) {
            throw Error("crop: bounding box out of bounds on axis " + std::to_string(a));
        }
    }
    Grid3<T> out(b.extent());
    for (std::size_t d = 0; d < out.depth(); ++d)
        for (std::size_t w = 0; w < out.width(); ++w)
            for (std::size_t h = 0; h < out.height(); ++h)
                out(d, w, h) = g(d + b.min[0], w + b.min[1], h + b.min[2]);
    return out;
}

}  // namespace

BoundingBox full_box(const Dims& dims) {
    return {{0, 0, 0}, {dims.depth - 1, dims.width - 1, dims.height - 1}};
}

Mask segment_lungs(const Volume& v, const SegmentationParams& params) {
    const std::size_t total = v.size();

    Mask candidate(v.dims(), 0);
    {
        const auto src = v.values();
        auto dst = candidate.values();
        for (std::size_t i = 0; i < total; ++i) dst[i] = src[i] < params.threshold ? 1 : 0;
    }

    const Mask interior = clear_border(candidate);
    const Components comps = label_components(interior);

    // Keep order: larger first, then earlier first voxel. Only the kept set
    // matters for the mask, but the order is fixed for reproducible labels.
    std::vector<std::size_t> order(comps.sizes.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (comps.sizes[a] != comps.sizes[b]) return comps.sizes[a] > comps.sizes[b];
        return comps.first_voxel[a] < comps.first_voxel[b];
    });
    const double min_size = params.min_component_fraction * static_cast<double>(total);
    std::vector<std::uint8_t> keep(comps.sizes.size() + 1, 0);
    for (std::size_t k : order) {
        if (static_cast<double>(comps.sizes[k]) >= min_size) keep[k + 1] = 1;
    }

    Mask kept(v.dims(), 0);
    {
        const auto labels = comps.labels.values();
        auto dst = kept.values();
        for (std::size_t i = 0; i < total; ++i) dst[i] = keep[static_cast<std::size_t>(labels[i])];
    }

    Mask closed = close_ball(kept, params.closing_radius);
    {
        auto dst = closed.values();
        const auto air = interior.values();
        for (std::size_t i = 0; i < total; ++i) dst[i] = (dst[i] && air[i]) ? 1 : 0;
    }

    const std::size_t marked = count_true(closed);
    if (static_cast<double>(marked) < kMinMaskFraction * static_cast<double>(total)) {
        throw SegmentationEmpty("segmentation-empty: " + std::to_string(marked) + " of " + std::to_string(total) +
                                " voxels marked");
    }
    return closed;
}

BoundingBox mask_bounding_box(const Mask& m, std::size_t margin) {
    BoundingBox box{{m.depth(), m.width(), m.height()}, {0, 0, 0}};
    bool any = false;
    for (std::size_t d = 0; d < m.depth(); ++d)
        for (std::size_t w = 0; w < m.width(); ++w)
            for (std::size_t h = 0; h < m.height(); ++h) {
                if (!m(d, w, h)) continue;
                any = true;
                const std::array<std::size_t, 3> p = {d, w, h};
                for (int a = 0; a < 3; ++a) {
                    box.min[a] = std::min(box.min[a], p[a]);
                    box.max[a] = std::max(box.max[a], p[a]);
                }
            }
    if (!any) throw Error("mask_bounding_box: empty mask");

    const std::array<std::size_t, 3> ext = {m.depth(), m.width(), m.height()};
    for (int a = 0; a < 3; ++a) {
        box.min[a] = box.min[a] > margin ? box.min[a] - margin : 0;
        box.max[a] = std::min(box.max[a] + margin, ext[a] - 1);
    }
    return box;
}

Volume crop(const Volume& v, const BoundingBox& b) { return crop_grid(v, b); }
Mask crop(const Mask& m, const BoundingBox& b) { return crop_grid(m, b); }

}  // namespace cov3d
