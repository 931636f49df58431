#include <stdexcept>
#include <cmath>
#include <random>

#include "doctest.h"

#include "cov3d/resample.hpp"

using namespace cov3d;

namespace {

// Straightforward reference: explicit 3-D index arithmetic per axis pass.
std::vector<double> reference_resize(const Volume& v, const Dims& target) {
    std::array<std::size_t, 3> ext = {v.depth(), v.width(), v.height()};
    std::vector<double> cur(v.values().begin(), v.values().end());
    const std::array<std::size_t, 3> want = {target.depth, target.width, target.height};

    auto at = [](const std::vector<double>& g, const std::array<std::size_t, 3>& e, std::array<std::size_t, 3> i) {
        return g[(i[0] * e[1] + i[1]) * e[2] + i[2]];
    };

    for (int axis = 0; axis < 3; ++axis) {
        const std::size_t n = ext[axis];
        const double s = double(n) / double(want[axis]);
        if (s > 1.0) {
            const double sigma = (s - 1.0) / 2.0;
            const long radius = long(std::ceil(4.0 * sigma));
            double norm = 0.0;
            for (long t = -radius; t <= radius; ++t) norm += std::exp(-0.5 * t * t / (sigma * sigma));
            std::vector<double> sm(cur.size());
            for (std::size_t a = 0; a < ext[0]; ++a)
                for (std::size_t b = 0; b < ext[1]; ++b)
                    for (std::size_t c = 0; c < ext[2]; ++c) {
                        std::array<std::size_t, 3> i = {a, b, c};
                        double acc = 0.0;
                        for (long t = -radius; t <= radius; ++t) {
                            auto j = i;
                            j[axis] = std::size_t(std::clamp<long>(long(i[axis]) + t, 0, long(n) - 1));
                            acc += std::exp(-0.5 * t * t / (sigma * sigma)) / norm * at(cur, ext, j);
                        }
                        sm[(a * ext[1] + b) * ext[2] + c] = acc;
                    }
            cur = sm;
        }
        if (n == want[axis]) continue;
        auto next_ext = ext;
        next_ext[axis] = want[axis];
        std::vector<double> nx(next_ext[0] * next_ext[1] * next_ext[2]);
        for (std::size_t a = 0; a < next_ext[0]; ++a)
            for (std::size_t b = 0; b < next_ext[1]; ++b)
                for (std::size_t c = 0; c < next_ext[2]; ++c) {
                    std::array<std::size_t, 3> i = {a, b, c};
                    const double x = std::clamp((i[axis] + 0.5) * s - 0.5, 0.0, double(n - 1));
                    auto lo = i, hi = i;
                    lo[axis] = std::size_t(std::floor(x));
                    hi[axis] = std::min(lo[axis] + 1, n - 1);
                    const double f = x - std::floor(x);
                    nx[(a * next_ext[1] + b) * next_ext[2] + c] = (1 - f) * at(cur, ext, lo) + f * at(cur, ext, hi);
                }
        cur = nx;
        ext = next_ext;
    }
    return cur;
}

Volume random_volume(std::mt19937& rng, Dims dims, float lo = 0.0f, float hi = 1.0f) {
    std::uniform_real_distribution<float> u(lo, hi);
    Volume v(dims);
    for (auto& x : v.values()) x = u(rng);
    return v;
}

}  // namespace

TEST_CASE("standard sizes") {
    CHECK(standard_dims(StandardSize::small) == Dims{64, 128, 128});
    CHECK(standard_dims(StandardSize::medium) == Dims{256, 256, 176});
    CHECK(standard_dims(StandardSize::large) == Dims{320, 320, 224});
    CHECK(parse_standard_size("medium") == StandardSize::medium);
    CHECK_FALSE(parse_standard_size("huge").has_value());
}

TEST_CASE("gaussian kernel is normalized and symmetric") {
    for (double sigma : {0.1, 0.5, 1.0, 3.5}) {
        const auto k = gaussian_kernel(sigma);
        double sum = 0;
        for (double w : k) sum += w;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
        for (std::size_t i = 0; i < k.size(); ++i) CHECK(k[i] == k[k.size() - 1 - i]);
    }
    CHECK_THROWS(gaussian_kernel(0.0));
}

TEST_CASE("resize to the same dims is the identity") {
    std::mt19937 rng(1);
    const Volume v = random_volume(rng, Dims{5, 6, 7});
    CHECK(resize(v, v.dims()) == v);
}

TEST_CASE("resize of a constant volume stays constant") {
    const Volume v(Dims{9, 13, 6}, 0.7f);
    for (const Dims& t : {Dims{3, 4, 5}, Dims{20, 2, 11}, Dims{1, 1, 1}, Dims{64, 128, 128}}) {
        const Volume out = resize(v, t);
        CHECK(out.dims() == t);
        CHECK(min_value(out) >= 0.7f - 1e-6f);
        CHECK(max_value(out) <= 0.7f + 1e-6f);
    }
}

TEST_CASE("upsampling reproduces an affine profile in the interior") {
    const std::size_t n = 10;
    Volume v(Dims{3, n, 4});
    for (std::size_t d = 0; d < 3; ++d)
        for (std::size_t w = 0; w < n; ++w)
            for (std::size_t h = 0; h < 4; ++h) v(d, w, h) = 0.1f + 0.05f * static_cast<float>(w);

    const Volume out = resize(v, Dims{3, 2 * n, 4});
    double worst = 0.0;
    int interior = 0;
    for (std::size_t i = 0; i < 2 * n; ++i) {
        const double x = (i + 0.5) * 0.5 - 0.5;  // source coordinate
        if (x < 0.0 || x > double(n - 1)) continue;
        ++interior;
        const double expected = 0.1 + 0.05 * x;
        for (std::size_t d = 0; d < 3; ++d)
            for (std::size_t h = 0; h < 4; ++h) worst = std::max(worst, std::abs(out(d, i, h) - expected));
    }
    CHECK(interior == int(2 * n - 2));
    CHECK(worst < 1e-6);
}

TEST_CASE("resize matches the per-axis reference within 1e-9") {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 8; ++trial) {
        std::uniform_int_distribution<std::size_t> dim(1, 14);
        const Volume v = random_volume(rng, Dims{dim(rng), dim(rng), dim(rng)});
        const Dims t{dim(rng), dim(rng), dim(rng)};
        const auto got = resize_values(v, t);
        const auto ref = reference_resize(v, t);
        REQUIRE(got.size() == ref.size());
        double worst = 0;
        for (std::size_t i = 0; i < got.size(); ++i) worst = std::max(worst, std::abs(got[i] - ref[i]));
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("resize output stays within the input range") {
    std::mt19937 rng(9);
    std::uniform_int_distribution<std::size_t> dim(1, 24);
    for (int trial = 0; trial < 40; ++trial) {
        const Volume v = random_volume(rng, Dims{dim(rng), dim(rng), dim(rng)}, -2.0f, 3.0f);
        const Volume out = resize(v, Dims{dim(rng), dim(rng), dim(rng)});
        CHECK(min_value(out) >= min_value(v) - 1e-6f);
        CHECK(max_value(out) <= max_value(v) + 1e-6f);
    }
}

TEST_CASE("resize is deterministic and rejects zero targets") {
    std::mt19937 rng(4);
    const Volume v = random_volume(rng, Dims{30, 20, 10});
    CHECK(resize(v, Dims{8, 9, 7}) == resize(v, Dims{8, 9, 7}));
    CHECK_THROWS_AS(resize(v, Dims{0, 4, 4}), std::invalid_argument);
}
