#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cov3d/volume.hpp"

namespace cov3d {

/// Numeric-aware ordering: digit runs compare by value, other runs bytewise.
/// "2.jpg" < "10.jpg". Names equal under this order but not bytewise
/// ("01.jpg" vs "1.jpg") compare as equivalent.
bool natural_less(std::string_view a, std::string_view b);

/// Returns the image files in `dir` (by extension) in natural order.
/// Throws Error when two names are tied under natural_less.
std::vector<std::filesystem::path> list_slice_files(const std::filesystem::path& dir);

bool is_slice_image(const std::filesystem::path& p);

/// Reads a directory of 2-D slices into a Volume with depth = slice count.
///
/// Image columns map to the width (sagittal) axis and image rows to the
/// height (frontal) axis. 8-bit values are scaled by 1/255 and 16-bit by
/// 1/65535. Colour images are reduced with Rec. 601 luma weights
/// (0.299 R + 0.587 G + 0.114 B); an alpha channel is ignored.
///
/// Errors name the offending file: empty directory, undecodable image,
/// mismatched slice dimensions.
Volume load_slice_stack(const std::filesystem::path& dir);

}  // namespace cov3d
