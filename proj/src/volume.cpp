#include "cov3d/volume.hpp"

#include <algorithm>
#include <numeric>

namespace cov3d {

double mean(const Volume& v) {
    if (v.size() == 0) return 0.0;
    const auto vals = v.values();
    return std::accumulate(vals.begin(), vals.end(), 0.0) / static_cast<double>(vals.size());
}

float min_value(const Volume& v) {
    const auto vals = v.values();
    return *std::min_element(vals.begin(), vals.end());
}

float max_value(const Volume& v) {
    const auto vals = v.values();
    return *std::max_element(vals.begin(), vals.end());
}

std::size_t count_true(const Mask& m) {
    const auto vals = m.values();
    return static_cast<std::size_t>(std::count_if(vals.begin(), vals.end(), [](auto x) { return x != 0; }));
}

Volume mask_to_volume(const Mask& m) {
    Volume out(m.dims());
    auto dst = out.values();
    const auto src = m.values();
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] ? 1.0f : 0.0f;
    return out;
}

}  // namespace cov3d
