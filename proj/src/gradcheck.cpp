#include "cov3d/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace cov3d {

std::vector<double> finite_difference_grad(const std::vector<double>& logits, const CategoryLabel& y,
                                           const LossConfig& cfg, double step) {
    std::vector<double> g(logits.size());
    std::vector<double> z = logits;
    for (std::size_t k = 0; k < z.size(); ++k) {
        const double orig = z[k];
        z[k] = orig + step;
        const double up = combined_loss(z, y, cfg);
        z[k] = orig - step;
        const double down = combined_loss(z, y, cfg);
        z[k] = orig;
        g[k] = (up - down) / (2.0 * step);
    }
    return g;
}

double relative_error(const std::vector<double>& a, const std::vector<double>& b) {
    double diff = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        diff += (a[i] - b[i]) * (a[i] - b[i]);
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    const double denom = std::sqrt(std::max(na, nb));
    return denom < 1e-12 ? std::sqrt(diff) : std::sqrt(diff) / denom;
}

GradCheckReport run_gradient_check(const GradCheckOptions& opts) {
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> logit(-opts.logit_range, opts.logit_range);
    std::uniform_real_distribution<double> gamma(0.0, opts.gamma_max);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> dist(opts.distance_min, opts.distance_max);
    std::uniform_int_distribution<int> label(0, category::kCount);  // kCount -> PositiveUnknown

    GradCheckReport report;
    report.trials = opts.trials;
    for (std::size_t t = 0; t < opts.trials; ++t) {
        GradCheckTrial trial;
        trial.logits.resize(category::kCount);
        for (double& z : trial.logits) z = logit(rng);
        const int l = label(rng);
        trial.label = l == category::kCount ? CategoryLabel::positive_unknown() : CategoryLabel::full(l);
        trial.config.gamma = gamma(rng);
        trial.config.lambda = unit(rng);
        for (double& d : trial.config.distances.adjacent) d = dist(rng);
        trial.config.distances.neg_pos = dist(rng);

        const auto analytic = combined_loss_grad(trial.logits, trial.label, trial.config);
        const auto numeric = finite_difference_grad(trial.logits, trial.label, trial.config, opts.step);
        trial.rel_error = relative_error(analytic, numeric);

        if (!(trial.rel_error < opts.tolerance)) ++report.failures;
        if (t == 0 || !(trial.rel_error <= report.max_rel_error)) {
            report.max_rel_error = trial.rel_error;
            report.worst = trial;
        }
    }
    return report;
}

}  // namespace cov3d
