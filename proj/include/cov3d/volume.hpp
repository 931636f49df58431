#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cov3d {

/// Grid extent. Axis order is depth (longitudinal), width (sagittal),
/// height (frontal); storage is depth-major, then width, then height.
struct Dims {
    std::size_t depth = 0;
    std::size_t width = 0;
    std::size_t height = 0;

    std::size_t count() const { return depth * width * height; }
    bool valid() const { return depth >= 1 && width >= 1 && height >= 1; }
    friend bool operator==(const Dims&, const Dims&) = default;
};

template <typename T>
class Grid3 {
public:
    Grid3() = default;
    explicit Grid3(Dims dims, T fill = T{}) : dims_(dims), data_(dims.count(), fill) {}
    Grid3(Dims dims, std::vector<T> data);

    const Dims& dims() const { return dims_; }
    std::size_t depth() const { return dims_.depth; }
    std::size_t width() const { return dims_.width; }
    std::size_t height() const { return dims_.height; }
    std::size_t size() const { return data_.size(); }

    std::size_t index(std::size_t d, std::size_t w, std::size_t h) const {
        return (d * dims_.width + w) * dims_.height + h;
    }

    T& operator()(std::size_t d, std::size_t w, std::size_t h) { return data_[index(d, w, h)]; }
    const T& operator()(std::size_t d, std::size_t w, std::size_t h) const {
        return data_[index(d, w, h)];
    }

    std::span<T> values() { return data_; }
    std::span<const T> values() const { return data_; }

    friend bool operator==(const Grid3&, const Grid3&) = default;

private:
    Dims dims_;
    std::vector<T> data_;
};

template <typename T>
Grid3<T>::Grid3(Dims dims, std::vector<T> data) : dims_(dims), data_(std::move(data)) {
    if (data_.size() != dims_.count()) {
        throw std::invalid_argument("Grid3: data length does not match dims");
    }
}

/// Normalized CT intensities. Values are in [0,1] straight after ingestion;
/// augmentation may push them outside that range.
using Volume = Grid3<float>;

/// Boolean voxel grid; stored as bytes (0 or 1).
using Mask = Grid3<std::uint8_t>;

double mean(const Volume& v);
float min_value(const Volume& v);
float max_value(const Volume& v);
std::size_t count_true(const Mask& m);

/// 0.0/1.0 volume, used to persist masks as CVOL.
Volume mask_to_volume(const Mask& m);

}  // namespace cov3d
