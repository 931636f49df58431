#pragma once

#include <filesystem>
#include <iosfwd>

#include "cov3d/volume.hpp"

namespace cov3d {

/// CVOL binary volume format, version 1.
///
///   bytes 0-3    magic "CVOL" (43 56 4F 4C)
///   byte  4      version (1)
///   bytes 5-7    zero padding
///   bytes 8-19   depth, width, height as uint32 little-endian
///   bytes 20-    depth*width*height float32 little-endian, depth-major,
///                then width, then height
///
/// The writer always emits little-endian regardless of host byte order.
namespace cvol {
inline constexpr unsigned char kMagic[4] = {0x43, 0x56, 0x4F, 0x4C};
inline constexpr unsigned char kVersion = 1;
inline constexpr std::size_t kHeaderBytes = 20;
}  // namespace cvol

void write_volume(const Volume& v, std::ostream& out);
void write_volume(const Volume& v, const std::filesystem::path& path);

/// Throws FormatError on bad magic/version/padding, zero dims, or when the
/// payload length differs from the header dims (truncation or trailing bytes).
Volume read_volume(std::istream& in);
Volume read_volume(const std::filesystem::path& path);

}  // namespace cov3d
