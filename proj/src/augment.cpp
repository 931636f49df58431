#include "cov3d/augment.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace cov3d {
namespace {

// Independent stream per (seed, index, purpose).
std::mt19937_64 stream(std::uint64_t seed, std::uint64_t index, std::uint32_t purpose) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), purpose};
    return std::mt19937_64(seq);
}

}  // namespace

Volume reflect_sagittal(const Volume& v) {
    Volume out(v.dims());
    const std::size_t w_last = v.width() - 1;
    for (std::size_t d = 0; d < v.depth(); ++d)
        for (std::size_t w = 0; w < v.width(); ++w)
            for (std::size_t h = 0; h < v.height(); ++h) out(d, w_last - w, h) = v(d, w, h);
    return out;
}

Volume brightness_contrast(const Volume& v, double brightness, double contrast) {
    if (!(contrast > 0.0)) throw std::invalid_argument("brightness_contrast: contrast must be > 0");
    Volume out(v.dims());
    const auto src = v.values();
    auto dst = out.values();
    for (std::size_t i = 0; i < src.size(); ++i) {
        dst[i] = static_cast<float>(contrast * (static_cast<double>(src[i]) - 0.5) + 0.5 + brightness);
    }
    return out;
}

AugmentSampler::AugmentSampler(const AugmentParams& params) : params_(params) {
    if (!(params.sigma_b >= 0.0) || !(params.sigma_c >= 0.0)) {
        throw std::invalid_argument("AugmentSampler: sigmas must be >= 0");
    }
}

BrightnessContrast AugmentSampler::sample(std::uint64_t index) const {
    BrightnessContrast out;
    auto rng = stream(params_.seed, index, 1);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double nb = normal(rng);
    const double nc = normal(rng);
    if (params_.sigma_b > 0.0) out.brightness = params_.sigma_b * nb;
    if (params_.sigma_c > 0.0) out.contrast = std::exp(params_.sigma_c * nc);
    return out;
}

bool AugmentSampler::reflect(std::uint64_t index) const {
    auto rng = stream(params_.seed, index, 2);
    return (rng() >> 63) != 0;
}

std::vector<double> tta_average(std::span<const double> p_original, std::span<const double> p_reflected) {
    if (p_original.size() != p_reflected.size()) throw std::invalid_argument("tta_average: length mismatch");
    std::vector<double> out(p_original.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = 0.5 * (p_original[i] + p_reflected[i]);
    return out;
}

}  // namespace cov3d
