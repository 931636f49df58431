#pragma once

#include <array>
#include <cstddef>

#include "cov3d/hu_window.hpp"
#include "cov3d/volume.hpp"

namespace cov3d {

/// Inclusive voxel extent, indexed [depth, width, height].
struct BoundingBox {
    std::array<std::size_t, 3> min{};
    std::array<std::size_t, 3> max{};

    Dims extent() const { return {max[0] - min[0] + 1, max[1] - min[1] + 1, max[2] - min[2] + 1}; }
    bool contains(std::size_t d, std::size_t w, std::size_t h) const {
        return d >= min[0] && d <= max[0] && w >= min[1] && w <= max[1] && h >= min[2] && h <= max[2];
    }
    friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

BoundingBox full_box(const Dims& dims);

struct SegmentationParams {
    /// Air threshold in normalized intensity; default is -320 HU in the
    /// default window, (-320 + 1150) / 1500.
    double threshold = hu_to_intensity(-320.0);
    double min_component_fraction = 0.01;
    int closing_radius = 2;
};

/// Fraction of the volume below which a segmentation counts as empty.
inline constexpr double kMinMaskFraction = 0.001;

/// Morphological lung segmentation:
///   1. candidate air = intensity < threshold
///   2. drop candidate components 6-connected to any volume face
///   3. label the rest with 6-connectivity
///   4. keep components with >= min_component_fraction * total voxels
///   5. close the kept union with a ball of closing_radius
/// The closed mask is restricted to interior candidate air (the step 2
/// output), so no voxel at or above the threshold and no border-connected
/// voxel is ever marked.
///
/// Throws SegmentationEmpty when the result covers < kMinMaskFraction of
/// the volume.
Mask segment_lungs(const Volume& v, const SegmentationParams& params = {});

/// Tightest box around the true voxels, grown by `margin` per side and
/// clamped to the grid. Throws Error on an empty mask.
BoundingBox mask_bounding_box(const Mask& m, std::size_t margin = 2);

/// Sub-volume copy. Throws Error if the box is inverted or out of bounds.
Volume crop(const Volume& v, const BoundingBox& b);
Mask crop(const Mask& m, const BoundingBox& b);

}  // namespace cov3d
