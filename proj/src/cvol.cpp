#include "cov3d/cvol.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "cov3d/error.hpp"

namespace cov3d {
namespace {

void put_u32(unsigned char* dst, std::uint32_t x) {
    dst[0] = static_cast<unsigned char>(x & 0xFF);
    dst[1] = static_cast<unsigned char>((x >> 8) & 0xFF);
    dst[2] = static_cast<unsigned char>((x >> 16) & 0xFF);
    dst[3] = static_cast<unsigned char>((x >> 24) & 0xFF);
}

std::uint32_t get_u32(const unsigned char* src) {
    return static_cast<std::uint32_t>(src[0]) | (static_cast<std::uint32_t>(src[1]) << 8) |
           (static_cast<std::uint32_t>(src[2]) << 16) | (static_cast<std::uint32_t>(src[3]) << 24);
}

std::uint32_t checked_u32(std::size_t n) {
    if (n > std::numeric_limits<std::uint32_t>::max()) {
        throw Error("CVOL: dimension exceeds uint32 range");
    }
    return static_cast<std::uint32_t>(n);
}

}  // namespace

void write_volume(const Volume& v, std::ostream& out) {
    if (!v.dims().valid()) throw Error("CVOL: cannot write a volume with a zero dimension");

    std::array<unsigned char, cvol::kHeaderBytes> header{};
    std::memcpy(header.data(), cvol::kMagic, 4);
    header[4] = cvol::kVersion;
    put_u32(header.data() + 8, checked_u32(v.depth()));
    put_u32(header.data() + 12, checked_u32(v.width()));
    put_u32(header.data() + 16, checked_u32(v.height()));
    out.write(reinterpret_cast<const char*>(header.data()), header.size());

    const auto vals = v.values();
    std::vector<unsigned char> payload(vals.size() * 4);
    for (std::size_t i = 0; i < vals.size(); ++i) {
        put_u32(payload.data() + 4 * i, std::bit_cast<std::uint32_t>(vals[i]));
    }
    out.write(reinterpret_cast<const char*>(payload.data()), static_cast<std::streamsize>(payload.size()));
    if (!out) throw IoError("CVOL: write failed");
}

void write_volume(const Volume& v, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("CVOL: cannot open for writing: " + path.string());
    write_volume(v, out);
    out.close();
    if (!out) throw IoError("CVOL: write failed: " + path.string());
}

Volume read_volume(std::istream& in) {
    std::array<unsigned char, cvol::kHeaderBytes> header{};
    in.read(reinterpret_cast<char*>(header.data()), header.size());
    if (in.gcount() != static_cast<std::streamsize>(header.size())) {
        throw FormatError("CVOL: truncated header");
    }
    if (std::memcmp(header.data(), cvol::kMagic, 4) != 0) throw FormatError("CVOL: bad magic");
    if (header[4] != cvol::kVersion) {
        throw FormatError("CVOL: unsupported version " + std::to_string(header[4]));
    }
    if (header[5] != 0 || header[6] != 0 || header[7] != 0) {
        throw FormatError("CVOL: nonzero header padding");
    }
    const Dims dims{get_u32(header.data() + 8), get_u32(header.data() + 12), get_u32(header.data() + 16)};
    if (!dims.valid()) throw FormatError("CVOL: zero dimension in header");

    const std::size_t n = dims.count();
    if (n > std::numeric_limits<std::size_t>::max() / 4) throw FormatError("CVOL: header dims overflow");

    std::vector<unsigned char> payload(n * 4);
    in.read(reinterpret_cast<char*>(payload.data()), static_cast<std::streamsize>(payload.size()));
    if (static_cast<std::size_t>(in.gcount()) != payload.size()) {
        throw FormatError("CVOL: payload size mismatch (expected " + std::to_string(payload.size()) +
                          " bytes, got " + std::to_string(in.gcount()) + ")");
    }
    if (in.peek() != std::char_traits<char>::eof()) {
        throw FormatError("CVOL: payload size mismatch (trailing bytes after " +
                          std::to_string(payload.size()) + " payload bytes)");
    }

    std::vector<float> data(n);
    for (std::size_t i = 0; i < n; ++i) data[i] = std::bit_cast<float>(get_u32(payload.data() + 4 * i));
    return Volume(dims, std::move(data));
}

Volume read_volume(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("CVOL: cannot open for reading: " + path.string());
    try {
        return read_volume(in);
    } catch (const FormatError& e) {
        throw FormatError(std::string(e.what()) + ": " + path.string());
    }
}

}  // namespace cov3d
