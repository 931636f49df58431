#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cov3d/volume.hpp"

namespace cov3d {

/// Reverses the width (sagittal) axis.
Volume reflect_sagittal(const Volume& v);

/// x' = contrast * (x - 0.5) + 0.5 + brightness, element-wise, unclamped.
/// Throws std::invalid_argument if contrast <= 0.
Volume brightness_contrast(const Volume& v, double brightness, double contrast);

struct AugmentParams {
    double sigma_b = 0.0;  // std-dev of the brightness offset
    double sigma_c = 0.0;  // std-dev of log contrast
    std::uint64_t seed = 0;
};

struct BrightnessContrast {
    double brightness = 0.0;
    double contrast = 1.0;
};

/// Counter-based sampler: the draw for (seed, index) does not depend on any
/// other draw, so workers can share params and split indices freely.
class AugmentSampler {
public:
    explicit AugmentSampler(const AugmentParams& params);

    /// brightness ~ Normal(0, sigma_b), contrast = exp(Normal(0, sigma_c)).
    /// A zero sigma yields exactly 0 (brightness) or 1 (contrast).
    BrightnessContrast sample(std::uint64_t index) const;

    /// Fair coin for training-time reflection.
    bool reflect(std::uint64_t index) const;

    const AugmentParams& params() const { return params_; }

private:
    AugmentParams params_;
};

/// Element-wise mean of the predictions for the original and the reflected scan.
std::vector<double> tta_average(std::span<const double> p_original, std::span<const double> p_reflected);

}  // namespace cov3d
