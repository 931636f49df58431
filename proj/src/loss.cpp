#include "cov3d/loss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cov3d {
namespace {

void check_label(const CategoryLabel& y, std::size_t n) {
    if (y.is_full() && (y.category() < 0 || static_cast<std::size_t>(y.category()) >= n)) {
        throw std::invalid_argument("category " + std::to_string(y.category()) + " out of range for " +
                                    std::to_string(n) + " classes");
    }
}

void check_size(std::span<const double> v, const DistanceSpec& d) {
    if (v.size() != d.categories()) {
        throw std::invalid_argument("expected " + std::to_string(d.categories()) + " scores, got " +
                                    std::to_string(v.size()));
    }
}

// Sum of all entries except `skip`; used as 1 - p_skip without cancellation.
double sum_except(std::span<const double> p, std::size_t skip) {
    double s = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j)
        if (j != skip) s += p[j];
    return s;
}

// Focal term given the target probability and its complement.
double focal_full(double pc, double rest, double gamma) {
    return -std::pow(rest, gamma) * std::log(std::max(pc, kLogFloor));
}

double focal_positive_unknown(double p0, double rest, double gamma) {
    return -std::pow(p0, gamma) * std::log(std::max(rest, kLogFloor));
}

}  // namespace

DistanceMatrix::DistanceMatrix(const DistanceSpec& spec) : n_(spec.categories()), d_(n_ * n_, 0.0) {
    for (std::size_t a = 0; a < n_; ++a)
        for (std::size_t b = 0; b < n_; ++b) {
            // sum the chain explicitly so d(a,b) == d(b,a) bit for bit
            const std::size_t lo = std::min(a, b), hi = std::max(a, b);
            double s = 0.0;
            for (std::size_t k = lo; k < hi; ++k) s += spec.adjacent[k];
            d_[a * n_ + b] = s;
        }
}

std::vector<double> softmax(std::span<const double> logits) {
    if (logits.empty()) throw std::invalid_argument("softmax: empty input");
    const double m = *std::max_element(logits.begin(), logits.end());
    std::vector<double> p(logits.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        p[i] = std::exp(logits[i] - m);
        sum += p[i];
    }
    for (double& x : p) x /= sum;
    return p;
}

double focal_loss(std::span<const double> p, const CategoryLabel& y, double gamma) {
    check_label(y, p.size());
    if (y.is_full()) {
        const double pc = p[static_cast<std::size_t>(y.category())];
        return focal_full(pc, 1.0 - pc, gamma);
    }
    return focal_positive_unknown(p[0], 1.0 - p[0], gamma);
}

double emd_loss(std::span<const double> p, const CategoryLabel& y, const DistanceSpec& d) {
    check_size(p, d);
    check_label(y, p.size());
    if (y.is_positive_unknown()) return p[0] * d.neg_pos;
    const DistanceMatrix dm(d);
    const auto c = static_cast<std::size_t>(y.category());
    double s = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) s += p[j] * dm(j, c);
    return s;
}

double combined_loss(std::span<const double> logits, const CategoryLabel& y, const LossConfig& cfg) {
    check_size(logits, cfg.distances);
    check_label(y, logits.size());
    const auto p = softmax(logits);
    double focal;
    if (y.is_full()) {
        const auto c = static_cast<std::size_t>(y.category());
        focal = focal_full(p[c], sum_except(p, c), cfg.gamma);
    } else {
        focal = focal_positive_unknown(p[0], sum_except(p, 0), cfg.gamma);
    }
    return (1.0 - cfg.lambda) * focal + cfg.lambda * emd_loss(p, y, cfg.distances);
}

// Both loss parts depend on the logits only through p. With
// dp_i/dz_k = p_i (delta_ik - p_k):
//   Full(c) focal:  dL/dz_k = A (delta_ck - p_k),
//       A = gamma q^(gamma-1) p_c log p_c - q^gamma,  q = 1 - p_c
//   PositiveUnknown focal:  dL/dz_k = B (delta_0k - p_k),
//       B = -gamma p_0^gamma log q + p_0^(gamma+1) / q,  q = 1 - p_0
//   Full(c) EMD:  dE/dz_k = p_k (d(k,c) - E)
//   PositiveUnknown EMD:  dE/dz_k = neg_pos p_0 (delta_0k - p_k)
// A clamped log contributes no derivative.
std::vector<double> combined_loss_grad(std::span<const double> logits, const CategoryLabel& y,
                                       const LossConfig& cfg) {
    check_size(logits, cfg.distances);
    check_label(y, logits.size());
    const std::size_t n = logits.size();
    const auto p = softmax(logits);
    const double gamma = cfg.gamma;
    const double lambda = cfg.lambda;
    std::vector<double> g(n, 0.0);

    if (y.is_full()) {
        const auto c = static_cast<std::size_t>(y.category());
        const double pc = p[c];
        const double q = sum_except(p, c);
        const bool clamped = pc < kLogFloor;
        const double log_pc = std::log(std::max(pc, kLogFloor));
        double a = 0.0;
        if (gamma != 0.0 && q > 0.0) a += gamma * std::pow(q, gamma - 1.0) * pc * log_pc;
        if (!clamped) a -= std::pow(q, gamma);

        const DistanceMatrix dm(cfg.distances);
        double emd = 0.0;
        for (std::size_t j = 0; j < n; ++j) emd += p[j] * dm(j, c);

        for (std::size_t k = 0; k < n; ++k) {
            const double delta = k == c ? 1.0 : 0.0;
            g[k] = (1.0 - lambda) * a * (delta - p[k]) + lambda * p[k] * (dm(k, c) - emd);
        }
    } else {
        const double p0 = p[0];
        const double q = sum_except(p, 0);
        const bool clamped = q < kLogFloor;
        const double log_q = std::log(std::max(q, kLogFloor));
        double b = 0.0;
        if (gamma != 0.0) b -= gamma * std::pow(p0, gamma) * log_q;
        if (!clamped) b += std::pow(p0, gamma + 1.0) / q;
        const double emd_coef = cfg.distances.neg_pos * p0;

        for (std::size_t k = 0; k < n; ++k) {
            const double delta = k == 0 ? 1.0 : 0.0;
            g[k] = ((1.0 - lambda) * b + lambda * emd_coef) * (delta - p[k]);
        }
    }
    return g;
}

BatchLoss combined_loss_batch(const std::vector<std::vector<double>>& logits,
                              const std::vector<CategoryLabel>& labels, const LossConfig& cfg) {
    if (logits.size() != labels.size()) throw std::invalid_argument("batch: logits/labels length mismatch");
    BatchLoss out;
    if (logits.empty()) return out;
    const double inv = 1.0 / static_cast<double>(logits.size());
    out.grads.reserve(logits.size());
    for (std::size_t i = 0; i < logits.size(); ++i) {
        out.loss += combined_loss(logits[i], labels[i], cfg);
        auto g = combined_loss_grad(logits[i], labels[i], cfg);
        for (double& x : g) x *= inv;
        out.grads.push_back(std::move(g));
    }
    out.loss *= inv;
    return out;
}

void validate(const LossConfig& cfg) {
    if (!(cfg.gamma >= 0.0) || !std::isfinite(cfg.gamma)) throw std::invalid_argument("gamma must be >= 0");
    if (!(cfg.lambda >= 0.0 && cfg.lambda <= 1.0)) throw std::invalid_argument("lambda must be in [0, 1]");
    if (cfg.distances.adjacent.empty()) throw std::invalid_argument("need at least 2 categories");
    for (double d : cfg.distances.adjacent)
        if (!(d >= 0.0) || !std::isfinite(d)) throw std::invalid_argument("distances must be finite and >= 0");
    if (!(cfg.distances.neg_pos >= 0.0) || !std::isfinite(cfg.distances.neg_pos))
        throw std::invalid_argument("neg_pos distance must be finite and >= 0");
}

}  // namespace cov3d
