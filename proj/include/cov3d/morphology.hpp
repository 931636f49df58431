#pragma once

#include <cstdint>
#include <vector>

#include "cov3d/volume.hpp"

namespace cov3d {

/// Connected components under 6-connectivity. Labels are 1-based and
/// numbered in scan order of each component's first voxel; 0 = background.
struct Components {
    Grid3<std::int32_t> labels;
    std::vector<std::size_t> sizes;        // sizes[k] for label k+1
    std::vector<std::size_t> first_voxel;  // linear index of the first voxel of label k+1
};

Components label_components(const Mask& m);

/// Removes every 6-connected component of `m` that touches a volume face.
Mask clear_border(const Mask& m);

/// Squared Euclidean distance from each voxel to the nearest set voxel of `m`
/// (exact, separable lower-envelope transform). Voxels with no set voxel in
/// the grid get UINT32_MAX.
Grid3<std::uint32_t> squared_distance_to_set(const Mask& m);

/// Binary dilation / erosion / closing with the discrete ball
/// {offset : |offset| <= radius}. Outside the grid counts as background for
/// dilation and as foreground for erosion. Closing is computed on a grid padded by `radius`, so it equals
/// the unbounded-plane closing restricted to the volume and is extensive
/// (closing(m) contains m).
Mask dilate_ball(const Mask& m, int radius);
Mask erode_ball(const Mask& m, int radius);
Mask close_ball(const Mask& m, int radius);

}  // namespace cov3d
