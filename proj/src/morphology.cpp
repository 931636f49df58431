#include "cov3d/morphology.hpp"

#include <array>
#include <limits>
#include <stdexcept>

namespace cov3d {
namespace {

constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

// Visits the 6-neighbours of linear index `idx` inside `dims`.
template <typename F>
void for_each_neighbour(const Dims& dims, std::size_t idx, F&& f) {
    const std::size_t h = idx % dims.height;
    const std::size_t w = (idx / dims.height) % dims.width;
    const std::size_t d = idx / (dims.height * dims.width);
    const std::size_t sw = dims.height;
    const std::size_t sd = dims.height * dims.width;
    if (d > 0) f(idx - sd);
    if (d + 1 < dims.depth) f(idx + sd);
    if (w > 0) f(idx - sw);
    if (w + 1 < dims.width) f(idx + sw);
    if (h > 0) f(idx - 1);
    if (h + 1 < dims.height) f(idx + 1);
}

bool on_face(const Dims& dims, std::size_t idx) {
    const std::size_t h = idx % dims.height;
    const std::size_t w = (idx / dims.height) % dims.width;
    const std::size_t d = idx / (dims.height * dims.width);
    return d == 0 || w == 0 || h == 0 || d + 1 == dims.depth || w + 1 == dims.width || h + 1 == dims.height;
}

// 1-D squared distance transform (lower envelope of parabolas) over `f`,
// in place. kInf entries are sites that do not exist.
void edt_1d(std::vector<std::uint64_t>& f, std::vector<std::int64_t>& sites, std::vector<double>& bounds,
            std::vector<std::uint64_t>& out) {
    const auto n = static_cast<std::int64_t>(f.size());
    sites.clear();
    bounds.clear();
    for (std::int64_t q = 0; q < n; ++q) {
        if (f[q] == kInf) continue;
        const double fq = static_cast<double>(f[q]) + static_cast<double>(q) * static_cast<double>(q);
        while (!sites.empty()) {
            const std::int64_t v = sites.back();
            const double fv = static_cast<double>(f[v]) + static_cast<double>(v) * static_cast<double>(v);
            const double s = (fq - fv) / (2.0 * static_cast<double>(q - v));
            if (s <= bounds.back()) {
                sites.pop_back();
                bounds.pop_back();
            } else {
                break;
            }
        }
        if (sites.empty()) {
            sites.push_back(q);
            bounds.push_back(-std::numeric_limits<double>::infinity());
        } else {
            const std::int64_t v = sites.back();
            const double fv = static_cast<double>(f[v]) + static_cast<double>(v) * static_cast<double>(v);
            bounds.push_back((fq - fv) / (2.0 * static_cast<double>(q - v)));
            sites.push_back(q);
        }
    }
    out.assign(f.size(), kInf);
    if (sites.empty()) return;
    std::size_t k = 0;
    for (std::int64_t q = 0; q < n; ++q) {
        while (k + 1 < sites.size() && bounds[k + 1] < static_cast<double>(q)) ++k;
        const std::int64_t v = sites[k];
        const std::uint64_t dq = static_cast<std::uint64_t>((q - v) * (q - v));
        out[q] = f[v] + dq;
    }
}

// Applies edt_1d along one axis of a uint64 grid stored with Dims layout.
void edt_axis(std::vector<std::uint64_t>& g, const Dims& dims, int axis) {
    const std::array<std::size_t, 3> ext = {dims.depth, dims.width, dims.height};
    const std::array<std::size_t, 3> stride = {dims.width * dims.height, dims.height, 1};
    const int a = (axis + 1) % 3;
    const int b = (axis + 2) % 3;
    std::vector<std::uint64_t> line(ext[axis]), out;
    std::vector<std::int64_t> sites;
    std::vector<double> bounds;
    for (std::size_t i = 0; i < ext[a]; ++i) {
        for (std::size_t j = 0; j < ext[b]; ++j) {
            const std::size_t base = i * stride[a] + j * stride[b];
            for (std::size_t k = 0; k < ext[axis]; ++k) line[k] = g[base + k * stride[axis]];
            edt_1d(line, sites, bounds, out);
            for (std::size_t k = 0; k < ext[axis]; ++k) g[base + k * stride[axis]] = out[k];
        }
    }
}

// Squared distances as uint64 with kInf for "no site".
std::vector<std::uint64_t> sq_distance(const Mask& m) {
    const auto src = m.values();
    std::vector<std::uint64_t> g(src.size());
    for (std::size_t i = 0; i < src.size(); ++i) g[i] = src[i] ? 0 : kInf;
    for (int axis = 0; axis < 3; ++axis) edt_axis(g, m.dims(), axis);
    return g;
}

Mask pad(const Mask& m, std::size_t r) {
    Mask out(Dims{m.depth() + 2 * r, m.width() + 2 * r, m.height() + 2 * r}, 0);
    for (std::size_t d = 0; d < m.depth(); ++d)
        for (std::size_t w = 0; w < m.width(); ++w)
            for (std::size_t h = 0; h < m.height(); ++h) out(d + r, w + r, h + r) = m(d, w, h);
    return out;
}

Mask unpad(const Mask& m, std::size_t r) {
    Mask out(Dims{m.depth() - 2 * r, m.width() - 2 * r, m.height() - 2 * r}, 0);
    for (std::size_t d = 0; d < out.depth(); ++d)
        for (std::size_t w = 0; w < out.width(); ++w)
            for (std::size_t h = 0; h < out.height(); ++h) out(d, w, h) = m(d + r, w + r, h + r);
    return out;
}

void check_radius(int radius) {
    if (radius < 0) throw std::invalid_argument("structuring element radius must be >= 0");
}

}  // namespace

Components label_components(const Mask& m) {
    const Dims dims = m.dims();
    const auto src = m.values();
    Components c{Grid3<std::int32_t>(dims, 0), {}, {}};
    auto labels = c.labels.values();
    std::vector<std::size_t> stack;
    std::int32_t next = 0;
    for (std::size_t seed = 0; seed < src.size(); ++seed) {
        if (!src[seed] || labels[seed] != 0) continue;
        const std::int32_t label = ++next;
        std::size_t size = 0;
        labels[seed] = label;
        stack.push_back(seed);
        while (!stack.empty()) {
            const std::size_t idx = stack.back();
            stack.pop_back();
            ++size;
            for_each_neighbour(dims, idx, [&](std::size_t n) {
                if (src[n] && labels[n] == 0) {
                    labels[n] = label;
                    stack.push_back(n);
                }
            });
        }
        c.sizes.push_back(size);
        c.first_voxel.push_back(seed);
    }
    return c;
}

Mask clear_border(const Mask& m) {
    const Dims dims = m.dims();
    Mask out = m;
    auto dst = out.values();
    std::vector<std::size_t> stack;
    for (std::size_t idx = 0; idx < dst.size(); ++idx) {
        if (!dst[idx] || !on_face(dims, idx)) continue;
        dst[idx] = 0;
        stack.push_back(idx);
        while (!stack.empty()) {
            const std::size_t cur = stack.back();
            stack.pop_back();
            for_each_neighbour(dims, cur, [&](std::size_t n) {
                if (dst[n]) {
                    dst[n] = 0;
                    stack.push_back(n);
                }
            });
        }
    }
    return out;
}

Grid3<std::uint32_t> squared_distance_to_set(const Mask& m) {
    const auto g = sq_distance(m);
    Grid3<std::uint32_t> out(m.dims());
    auto dst = out.values();
    for (std::size_t i = 0; i < g.size(); ++i) dst[i] = g[i] >= kInf ? kInf : static_cast<std::uint32_t>(g[i]);
    return out;
}

Mask dilate_ball(const Mask& m, int radius) {
    check_radius(radius);
    const auto r2 = static_cast<std::uint64_t>(radius) * static_cast<std::uint64_t>(radius);
    const auto g = sq_distance(m);
    Mask out(m.dims(), 0);
    auto dst = out.values();
    for (std::size_t i = 0; i < g.size(); ++i) dst[i] = g[i] <= r2 ? 1 : 0;
    return out;
}

Mask erode_ball(const Mask& m, int radius) {
    check_radius(radius);
    const auto r2 = static_cast<std::uint64_t>(radius) * static_cast<std::uint64_t>(radius);
    Mask complement(m.dims(), 0);
    auto c = complement.values();
    const auto src = m.values();
    for (std::size_t i = 0; i < src.size(); ++i) c[i] = src[i] ? 0 : 1;
    const auto g = sq_distance(complement);
    Mask out(m.dims(), 0);
    auto dst = out.values();
    for (std::size_t i = 0; i < g.size(); ++i) dst[i] = g[i] > r2 ? 1 : 0;
    return out;
}

Mask close_ball(const Mask& m, int radius) {
    check_radius(radius);
    if (radius == 0) return m;
    const auto r = static_cast<std::size_t>(radius);
    return unpad(erode_ball(dilate_ball(pad(m, r), radius), radius), r);
}

}  // namespace cov3d
