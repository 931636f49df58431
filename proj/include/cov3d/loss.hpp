#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cov3d/category.hpp"

namespace cov3d {

/// Ordinal distances between adjacent categories, plus the separate
/// negative-to-positive distance used for partially labelled scans.
/// The category count is adjacent.size() + 1 (5 by default).
struct DistanceSpec {
    std::vector<double> adjacent{1.0, 1.0, 1.0, 1.0};
    double neg_pos = 1.0;

    std::size_t categories() const { return adjacent.size() + 1; }
};

struct LossConfig {
    double gamma = 2.0;   // focal exponent
    double lambda = 0.2;  // weight of the EMD term
    DistanceSpec distances;
};

/// Log arguments are clamped below at this value.
inline constexpr double kLogFloor = 1e-12;

/// Symmetric chain-distance matrix: d(a, b) is the sum of adjacent distances
/// between a and b.
class DistanceMatrix {
public:
    explicit DistanceMatrix(const DistanceSpec& spec);

    std::size_t size() const { return n_; }
    double operator()(std::size_t a, std::size_t b) const { return d_[a * n_ + b]; }

private:
    std::size_t n_;
    std::vector<double> d_;
};

inline DistanceMatrix distance_matrix(const DistanceSpec& spec) { return DistanceMatrix(spec); }

/// Max-subtracted softmax.
std::vector<double> softmax(std::span<const double> logits);

/// Full(c): -(1 - p_c)^gamma * log p_c.
/// PositiveUnknown: -p_0^gamma * log(1 - p_0).
double focal_loss(std::span<const double> p, const CategoryLabel& y, double gamma);

/// Full(c): sum_j p_j d(j, c).  PositiveUnknown: p_0 * neg_pos.
double emd_loss(std::span<const double> p, const CategoryLabel& y, const DistanceSpec& d);

/// (1 - lambda) * focal + lambda * emd, evaluated on softmax(logits).
double combined_loss(std::span<const double> logits, const CategoryLabel& y, const LossConfig& cfg);

/// Analytic gradient of combined_loss with respect to the logits.
std::vector<double> combined_loss_grad(std::span<const double> logits, const CategoryLabel& y,
                                       const LossConfig& cfg);

struct BatchLoss {
    double loss = 0.0;                        // mean over items
    std::vector<std::vector<double>> grads;   // d(mean)/d(logits_i)
};

BatchLoss combined_loss_batch(const std::vector<std::vector<double>>& logits,
                              const std::vector<CategoryLabel>& labels, const LossConfig& cfg);

/// Throws std::invalid_argument if the config is out of range
/// (gamma < 0, lambda outside [0,1], negative or non-finite distances).
void validate(const LossConfig& cfg);

}  // namespace cov3d
