#include <stdexcept>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"

#include "cov3d/gradcheck.hpp"
#include "cov3d/loss.hpp"

using namespace cov3d;

namespace {

const CategoryLabel kPU = CategoryLabel::positive_unknown();
CategoryLabel full(int c) { return CategoryLabel::full(c); }

// Chain distances as differences of cumulative positions along the ordinal axis.
std::vector<std::vector<double>> oracle_matrix(const DistanceSpec& spec) {
    const std::size_t n = spec.categories();
    std::vector<double> pos(n, 0.0);
    std::partial_sum(spec.adjacent.begin(), spec.adjacent.end(), pos.begin() + 1);
    std::vector<std::vector<double>> d(n, std::vector<double>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) d[a][b] = std::abs(pos[a] - pos[b]);
    return d;
}

}  // namespace

TEST_CASE("softmax") {
    const auto uniform = softmax(std::vector<double>{0, 0, 0, 0, 0});
    for (double p : uniform) CHECK(p == doctest::Approx(0.2).epsilon(1e-15));

    // e / (e + 4) and 1 / (e + 4), evaluated to 30 digits offline
    const auto p = softmax(std::vector<double>{1, 0, 0, 0, 0});
    CHECK(std::abs(p[0] - 0.404609675191689664821) < 1e-15);
    for (int k = 1; k < 5; ++k) CHECK(std::abs(p[k] - 0.148847581202077583795) < 1e-15);

    std::mt19937 rng(0);
    std::uniform_real_distribution<double> u(-30.0, 30.0);
    for (int t = 0; t < 200; ++t) {
        std::vector<double> z(5);
        for (double& x : z) x = u(rng);
        const auto a = softmax(z);
        const double k = u(rng);
        std::vector<double> zs = z;
        for (double& x : zs) x += k;
        const auto b = softmax(zs);
        double sum = 0.0;
        for (int i = 0; i < 5; ++i) {
            CHECK(a[i] > 0.0);
            CHECK(std::abs(a[i] - b[i]) < 1e-12);
            sum += a[i];
        }
        CHECK(std::abs(sum - 1.0) < 1e-12);
    }
    // large logits do not overflow
    const auto big = softmax(std::vector<double>{1000, 0, 0, 0, 0});
    CHECK(std::isfinite(big[0]));
}

TEST_CASE("focal loss closed forms") {
    const std::vector<double> certain = {0, 0, 1, 0, 0};
    CHECK(focal_loss(certain, full(2), 2.0) == 0.0);

    const std::vector<double> half = {0.5, 0.5, 0, 0, 0};
    CHECK(std::abs(focal_loss(half, full(1), 0.0) - std::log(2.0)) < 1e-12);
    CHECK(std::abs(focal_loss(half, full(1), 2.0) - 0.25 * std::log(2.0)) < 1e-12);
    CHECK(std::abs(focal_loss(half, kPU, 2.0) - 0.25 * std::log(2.0)) < 1e-12);

    // p_c = 0 is finite thanks to the log floor
    CHECK(std::isfinite(focal_loss(std::vector<double>{1, 0, 0, 0, 0}, full(3), 2.0)));
    CHECK(focal_loss(std::vector<double>{0, 0.5, 0.5, 0, 0}, kPU, 2.0) == 0.0);
}

TEST_CASE("focal loss is monotone and non-negative") {
    double prev = INFINITY;
    for (double pc = 0.01; pc <= 1.0; pc += 0.01) {
        const std::vector<double> p = {1 - pc, pc, 0, 0, 0};
        const double f = focal_loss(p, full(1), 1.5);
        CHECK(f >= 0.0);
        CHECK(f <= prev + 1e-15);
        prev = f;
    }
    prev = -1.0;
    for (double p0 = 0.0; p0 < 1.0; p0 += 0.01) {
        const std::vector<double> p = {p0, 1 - p0, 0, 0, 0};
        const double f = focal_loss(p, kPU, 1.5);
        CHECK(f >= 0.0);
        CHECK(f >= prev - 1e-15);
        prev = f;
    }
}

TEST_CASE("distance matrix") {
    const DistanceMatrix unit(DistanceSpec{});
    for (std::size_t b = 0; b < 5; ++b) CHECK(unit(0, b) == double(b));

    const DistanceMatrix d(DistanceSpec{{1, 2, 3, 4}, 1.0});
    CHECK(d(0, 4) == 10.0);
    CHECK(d(1, 3) == 5.0);
    for (std::size_t a = 0; a < 5; ++a) {
        CHECK(d(a, a) == 0.0);
        for (std::size_t b = 0; b < 5; ++b) CHECK(d(a, b) == d(b, a));
    }
    // neg_pos is not part of the chain
    const DistanceMatrix e(DistanceSpec{{1, 1, 1, 1}, 7.0});
    CHECK(e(0, 1) == 1.0);
}

TEST_CASE("EMD loss closed forms") {
    const DistanceSpec unit;
    CHECK(emd_loss(std::vector<double>{0, 0, 0, 1, 0}, full(3), unit) == 0.0);
    CHECK(std::abs(emd_loss(std::vector<double>(5, 0.2), full(0), unit) - 2.0) < 1e-12);
    CHECK(std::abs(emd_loss(std::vector<double>{0.3, 0.7, 0, 0, 0}, kPU, unit) - 0.3) < 1e-12);
}

TEST_CASE("EMD ordinal dominance: moving mass from class 1 to 4 costs 3 per unit") {
    const DistanceSpec unit;
    const std::vector<double> p = {0.2, 0.4, 0.1, 0.1, 0.2};
    for (double eps : {0.01, 0.1, 0.4}) {
        std::vector<double> q = p;
        q[1] -= eps;
        q[4] += eps;
        CHECK(std::abs(emd_loss(q, full(0), unit) - emd_loss(p, full(0), unit) - 3 * eps) < 1e-12);
    }
}

TEST_CASE("EMD matches the explicit matrix form") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> dist(0.1, 2.0), logit(-3, 3);
    for (int t = 0; t < 200; ++t) {
        DistanceSpec spec;
        for (double& d : spec.adjacent) d = dist(rng);
        std::vector<double> z(5);
        for (double& x : z) x = logit(rng);
        const auto p = softmax(z);
        const auto D = oracle_matrix(spec);
        const int c = static_cast<int>(rng() % 5);
        double expected = 0.0;
        for (int k = 0; k < 5; ++k) {
            const double y = k == c ? 1.0 : 0.0;
            for (int j = 0; j < 5; ++j) expected += y * p[j] * D[j][k];
        }
        CHECK(std::abs(emd_loss(p, full(c), spec) - expected) < 1e-12);
    }
}

TEST_CASE("EMD is non-negative and zero only at the target") {
    DistanceSpec spec{{0.5, 1.5, 0.2, 1.0}, 0.8};
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> logit(-4, 4);
    for (int t = 0; t < 100; ++t) {
        std::vector<double> z(5);
        for (double& x : z) x = logit(rng);
        const auto p = softmax(z);
        for (int c = 0; c < 5; ++c) CHECK(emd_loss(p, full(c), spec) > 0.0);
        CHECK(emd_loss(p, kPU, spec) > 0.0);
    }
    CHECK(emd_loss(std::vector<double>{0, 0, 0.5, 0.5, 0}, kPU, spec) == 0.0);
}

TEST_CASE("combined loss endpoints and linearity in lambda") {
    const std::vector<double> z = {0.3, -1.2, 0.8, 0.1, -0.4};
    const auto p = softmax(z);
    for (const auto& y : {full(0), full(2), full(4), kPU}) {
        LossConfig cfg;
        cfg.gamma = 1.7;
        cfg.lambda = 0.0;
        CHECK(std::abs(combined_loss(z, y, cfg) - focal_loss(p, y, cfg.gamma)) < 1e-12);
        cfg.lambda = 1.0;
        CHECK(std::abs(combined_loss(z, y, cfg) - emd_loss(p, y, cfg.distances)) < 1e-12);

        cfg.lambda = 0.0;
        const double l0 = combined_loss(z, y, cfg);
        cfg.lambda = 1.0;
        const double l1 = combined_loss(z, y, cfg);
        for (double lam : {0.1, 0.25, 0.6, 0.9}) {
            cfg.lambda = lam;
            CHECK(std::abs(combined_loss(z, y, cfg) - ((1 - lam) * l0 + lam * l1)) < 1e-12);
        }
    }
}

TEST_CASE("combined loss at uniform logits with lambda 0.2") {
    LossConfig cfg;
    cfg.gamma = 2.0;
    cfg.lambda = 0.2;
    const double expected = 0.8 * (0.64 * -std::log(0.2)) + 0.2 * 2.0;
    CHECK(std::abs(combined_loss(std::vector<double>(5, 0.0), full(0), cfg) - expected) < 1e-9);
    CHECK(std::abs(expected - 1.22403221116625939180) < 1e-14);
}

TEST_CASE("gradient with gamma 0 and lambda 0 is p - y") {
    LossConfig cfg;
    cfg.gamma = 0.0;
    cfg.lambda = 0.0;
    const std::vector<double> z = {0.5, -0.3, 1.1, 0.0, -2.0};
    const auto p = softmax(z);
    for (int c = 0; c < 5; ++c) {
        const auto g = combined_loss_grad(z, full(c), cfg);
        for (int k = 0; k < 5; ++k) CHECK(std::abs(g[k] - (p[k] - (k == c ? 1.0 : 0.0))) < 1e-14);
    }
}

TEST_CASE("gradient matches central finite differences") {
    GradCheckOptions opts;
    opts.trials = 1000;
    opts.seed = 2023;
    const auto report = run_gradient_check(opts);
    INFO("max relative error " << report.max_rel_error);
    CHECK(report.failures == 0);
    CHECK(report.max_rel_error < 1e-5);
}

TEST_CASE("raising the true logit never increases the loss") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> logit(-3, 3), unit(0, 1);
    for (int t = 0; t < 300; ++t) {
        std::vector<double> z(5);
        for (double& x : z) x = logit(rng);
        LossConfig cfg;
        cfg.gamma = 3 * unit(rng);
        cfg.lambda = unit(rng);
        const int c = static_cast<int>(rng() % 5);
        CHECK(combined_loss_grad(z, full(c), cfg)[c] <= 1e-15);
        // for PositiveUnknown, raising z_0 never decreases the loss
        CHECK(combined_loss_grad(z, kPU, cfg)[0] >= -1e-15);
    }
}

TEST_CASE("gradient components sum to zero (shift invariance)") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> logit(-3, 3);
    LossConfig cfg;
    for (int t = 0; t < 100; ++t) {
        std::vector<double> z(5);
        for (double& x : z) x = logit(rng);
        for (const auto& y : {full(static_cast<int>(t % 5)), kPU}) {
            const auto g = combined_loss_grad(z, y, cfg);
            CHECK(std::abs(std::accumulate(g.begin(), g.end(), 0.0)) < 1e-12);
        }
    }
}

TEST_CASE("generic category count") {
    LossConfig cfg;
    cfg.distances = DistanceSpec{{1.0, 0.5}, 1.0};
    const std::vector<double> z = {0.2, -0.1, 0.7};
    for (const auto& y : {full(0), full(2), kPU}) {
        const auto g = combined_loss_grad(z, y, cfg);
        const auto fd = finite_difference_grad(z, y, cfg, 1e-6);
        CHECK(relative_error(g, fd) < 1e-5);
    }
    CHECK_THROWS_AS(combined_loss(std::vector<double>(5, 0.0), full(0), cfg), std::invalid_argument);
    CHECK_THROWS_AS(combined_loss(z, full(3), cfg), std::invalid_argument);
}

TEST_CASE("batch loss is the mean of item losses") {
    LossConfig cfg;
    const std::vector<std::vector<double>> z = {{0, 1, 0, 0, 0}, {2, 0, -1, 0, 0.5}, {0, 0, 0, 3, 0}};
    const std::vector<CategoryLabel> y = {full(1), kPU, full(4)};
    const auto batch = combined_loss_batch(z, y, cfg);
    double mean = 0;
    for (int i = 0; i < 3; ++i) mean += combined_loss(z[i], y[i], cfg) / 3.0;
    CHECK(std::abs(batch.loss - mean) < 1e-14);
    for (int i = 0; i < 3; ++i) {
        const auto g = combined_loss_grad(z[i], y[i], cfg);
        for (int k = 0; k < 5; ++k) CHECK(std::abs(batch.grads[i][k] - g[k] / 3.0) < 1e-15);
    }
}

TEST_CASE("config validation") {
    LossConfig cfg;
    CHECK_NOTHROW(validate(cfg));
    cfg.lambda = 1.5;
    CHECK_THROWS(validate(cfg));
    cfg = {};
    cfg.gamma = -1;
    CHECK_THROWS(validate(cfg));
    cfg = {};
    cfg.distances.adjacent[2] = -0.1;
    CHECK_THROWS(validate(cfg));
}
