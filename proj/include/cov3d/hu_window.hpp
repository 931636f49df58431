#pragma once

#include <algorithm>

namespace cov3d {

/// Hounsfield window the slice images were clipped to before export.
struct HuWindow {
    double lo = -1150.0;
    double hi = 350.0;
};

inline bool valid(const HuWindow& w) { return w.lo < w.hi; }

inline double intensity_to_hu(double v, const HuWindow& w = {}) {
    return v * (w.hi - w.lo) + w.lo;
}

/// Clamps outside [lo, hi].
inline double hu_to_intensity(double hu, const HuWindow& w = {}) {
    return (std::clamp(hu, w.lo, w.hi) - w.lo) / (w.hi - w.lo);
}

}  // namespace cov3d
