#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cov3d/loss.hpp"

namespace cov3d {

/// Central finite-difference gradient of combined_loss (forward values only).
std::vector<double> finite_difference_grad(const std::vector<double>& logits, const CategoryLabel& y,
                                           const LossConfig& cfg, double step);

/// ||a - b||_2 / max(||a||_2, ||b||_2); absolute difference when both
/// norms are below 1e-12.
double relative_error(const std::vector<double>& a, const std::vector<double>& b);

struct GradCheckOptions {
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
    double step = 1e-6;
    double tolerance = 1e-5;
    double logit_range = 3.0;  // logits ~ U(-range, range)
    double gamma_max = 3.0;    // gamma ~ U(0, gamma_max)
    double distance_min = 0.1; // distances ~ U(distance_min, distance_max)
    double distance_max = 2.0;
};

struct GradCheckTrial {
    std::vector<double> logits;
    CategoryLabel label = CategoryLabel::full(0);
    LossConfig config;
    double rel_error = 0.0;
};

struct GradCheckReport {
    std::size_t trials = 0;
    std::size_t failures = 0;
    double max_rel_error = 0.0;
    GradCheckTrial worst;

    bool passed() const { return failures == 0; }
};

/// Draws random (logits, label, gamma, lambda, distances) with a seeded
/// generator and compares combined_loss_grad against finite differences.
/// Labels are uniform over the five full classes and PositiveUnknown.
GradCheckReport run_gradient_check(const GradCheckOptions& opts);

}  // namespace cov3d
