#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "cov3d/volume.hpp"

namespace cov3d {

enum class StandardSize { small, medium, large };

/// small 64x128x128, medium 256x256x176, large 320x320x224 (depth x width x height).
Dims standard_dims(StandardSize s);
std::optional<StandardSize> parse_standard_size(std::string_view name);

/// Normalized Gaussian taps for sigma > 0, truncated at 4 sigma.
std::vector<double> gaussian_kernel(double sigma);

/// Resizes with separable linear interpolation, axis by axis in the order
/// depth, width, height. Along each axis, if the size shrinks by s = src/dst > 1
/// the data is first smoothed with a Gaussian of sigma = (s - 1) / 2. Sample
/// positions use pixel centres: src = (dst + 0.5) * s - 0.5, clamped to the
/// edge; the smoothing also clamps at the edges. Intermediate values are
/// double; the result is rounded to float once at the end.
///
/// Throws std::invalid_argument on a zero target dimension or empty source.
Volume resize(const Volume& v, const Dims& target);

/// Same computation as resize(), before the final rounding to float.
std::vector<double> resize_values(const Volume& v, const Dims& target);
inline Volume resize(const Volume& v, StandardSize target) { return resize(v, standard_dims(target)); }

}  // namespace cov3d
