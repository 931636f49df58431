// cov3d: batch front-end for CT preprocessing, fold splitting, scoring,
// ensembling and the loss gradient check.

#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cov3d/error.hpp"
#include "cov3d/folds.hpp"
#include "cov3d/gradcheck.hpp"
#include "cov3d/manifest.hpp"
#include "cov3d/metrics.hpp"
#include "cov3d/preprocess.hpp"
#include "cov3d/resample.hpp"

namespace {

using namespace cov3d;

constexpr const char* kEnvPrefix = "COV3D_";

std::string env(const std::string& name) { return std::string(kEnvPrefix) + name; }

int cmd_preprocess(JobConfig cfg, const std::string& size_name) {
    const auto size = parse_standard_size(size_name);
    if (!size) throw Error("unknown size '" + size_name + "' (small|medium|large)");
    cfg.size = standard_dims(*size);

    const auto report = run_preprocess(cfg, [](const ScanReport& r) { std::cerr << format_scan_line(r) << '\n'; });
    std::cout << format_report(report);
    return 0;
}

int cmd_split(const std::string& manifest, std::uint64_t seed, const std::string& out) {
    auto records = read_manifest(manifest);
    if (const auto removed = dedupe_records(records); removed > 0) {
        std::cerr << "split: dropped " << removed << " repeated scan_id row(s), first occurrence kept\n";
    }
    const auto folds = make_folds(records, seed);
    write_folds(folds, out);

    // per-fold category counts
    std::map<std::string, int> group_of;
    for (const auto& r : records) {
        if (r.label) group_of[r.scan_id] = balance_group(*r.label);
    }
    static const char* kGroupNames[] = {"negative", "mild", "moderate", "severe", "critical", "positive_unknown"};
    int counts[kFoldCount][6] = {};
    for (const auto& [id, fold] : folds.entries) ++counts[fold][group_of.at(id)];
    std::printf("%-18s", "fold");
    for (int f = 0; f < kFoldCount; ++f) std::printf("%8d", f);
    std::printf("\n");
    for (int g = 0; g < 6; ++g) {
        std::printf("%-18s", kGroupNames[g]);
        for (int f = 0; f < kFoldCount; ++f) std::printf("%8d", counts[f][g]);
        std::printf("\n");
    }
    return 0;
}

int cmd_score(const std::string& truth_path, const std::string& pred_path, int task, const std::string& partition) {
    const auto records = read_manifest(truth_path);
    const auto preds = read_predictions(pred_path);
    std::optional<Partition> only;
    if (!partition.empty()) only = parse_partition(partition);

    std::vector<int> truth, pred;
    for (const auto& r : records) {
        if (!r.label || (only && r.partition != *only)) continue;
        int t;
        if (task == 1) {
            t = r.label->is_positive() ? 1 : 0;
        } else {
            if (!r.label->is_full() || r.label->category() == category::kNegative) continue;
            t = r.label->category();
        }
        const auto it = preds.find(r.scan_id);
        if (it == preds.end()) throw Error("no prediction for scan " + r.scan_id);
        truth.push_back(t);
        pred.push_back(task == 1 ? (presence_decision(it->second) == Presence::positive ? 1 : 0)
                                 : severity_decision(it->second));
    }

    const std::vector<int> classes = task == 1 ? std::vector<int>{0, 1} : std::vector<int>{1, 2, 3, 4};
    const auto report = macro_f1_report(truth, pred, classes);
    for (int c : report.undefined_classes) {
        std::cerr << "warning: class " << (task == 1 ? (c ? "positive" : "negative") : severity_name(c))
                  << " has no true or predicted items; its F1 counts as 0\n";
    }
    for (std::size_t k = 0; k < classes.size(); ++k) {
        const std::string name = task == 1 ? (classes[k] ? "positive" : "negative") : severity_name(classes[k]);
        std::printf("f1 %-10s %.6f\n", name.c_str(), report.per_class[k]);
    }
    std::printf("items %zu\n", truth.size());
    std::printf("macro_f1 %.6f\n", report.macro);
    return 0;
}

int cmd_ensemble(const std::string& out, const std::vector<std::string>& inputs) {
    std::vector<PredictionSet> sets;
    sets.reserve(inputs.size());
    for (const auto& in : inputs) sets.push_back(read_predictions(in));
    write_predictions(ensemble_average(sets), out);
    std::cerr << "ensemble: averaged " << inputs.size() << " file(s) into " << out << '\n';
    return 0;
}

int cmd_losscheck(std::size_t trials, std::uint64_t seed) {
    GradCheckOptions opts;
    opts.trials = trials;
    opts.seed = seed;
    const auto report = run_gradient_check(opts);
    std::printf("trials %zu\nfailures %zu\nmax_rel_error %.3e\ntolerance %.1e\n", report.trials, report.failures,
                report.max_rel_error, opts.tolerance);
    if (report.trials > 0) {
        const auto& w = report.worst;
        std::printf("worst: label=%s gamma=%.4f lambda=%.4f logits=[", label_name(w.label).c_str(),
                    w.config.gamma, w.config.lambda);
        for (std::size_t i = 0; i < w.logits.size(); ++i) std::printf("%s%.4f", i ? "," : "", w.logits[i]);
        std::printf("]\n");
    }
    std::printf("%s\n", report.passed() ? "PASS" : "FAIL");
    return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cov3d - CT volume preprocessing and ordinal-loss tooling"};
    app.require_subcommand(1);

    JobConfig job;
    std::string size_name = "medium";
    std::string input, output;
    auto* pre = app.add_subcommand("preprocess", "segment, crop and resize every scan under a dataset tree");
    pre->add_option("--input", input, "dataset root containing scan directories")->required()->envname(env("INPUT"));
    pre->add_option("--output", output, "output root for CVOL volumes")->required()->envname(env("OUTPUT"));
    pre->add_option("--size", size_name, "standard size")
        ->check(CLI::IsMember({"small", "medium", "large"}))
        ->capture_default_str()
        ->envname(env("SIZE"));
    pre->add_option("--threshold", job.segmentation.threshold, "air threshold (normalized intensity)")
        ->capture_default_str()
        ->envname(env("THRESHOLD"));
    pre->add_option("--min-component", job.segmentation.min_component_fraction,
                    "minimum kept component size as a fraction of the volume")
        ->capture_default_str()
        ->envname(env("MIN_COMPONENT"));
    pre->add_option("--closing-radius", job.segmentation.closing_radius, "closing ball radius (voxels)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str()
        ->envname(env("CLOSING_RADIUS"));
    pre->add_option("--margin", job.margin, "bounding box margin (voxels)")->capture_default_str()->envname(env("MARGIN"));
    pre->add_option("--jobs", job.jobs, "worker threads")
        ->check(CLI::PositiveNumber)
        ->capture_default_str()
        ->envname(env("JOBS"));
    pre->add_flag("--force", job.force, "overwrite existing outputs")->envname(env("FORCE"));

    std::string manifest, folds_out;
    std::uint64_t split_seed = 0;
    auto* split = app.add_subcommand("split", "assign scans to 5 cross-validation folds");
    split->add_option("--manifest", manifest, "dataset manifest")->required()->envname(env("MANIFEST"));
    split->add_option("--seed", split_seed, "shuffle seed")->required()->envname(env("SEED"));
    split->add_option("--out", folds_out, "fold file to write")->required()->envname(env("OUT"));

    std::string truth, pred_file, partition;
    int task = 1;
    auto* score = app.add_subcommand("score", "macro F1 of a prediction file against a manifest");
    score->add_option("--truth", truth, "manifest with labels")->required()->envname(env("TRUTH"));
    score->add_option("--pred", pred_file, "prediction file")->required()->envname(env("PRED"));
    score->add_option("--task", task, "1 = presence, 2 = severity")
        ->required()
        ->check(CLI::IsMember({1, 2}))
        ->envname(env("TASK"));
    score->add_option("--partition", partition, "only score rows of this partition")
        ->check(CLI::IsMember({"train", "validation", "test"}))
        ->envname(env("PARTITION"));

    std::string ens_out;
    std::vector<std::string> ens_inputs;
    auto* ens = app.add_subcommand("ensemble", "average the probabilities of several prediction files");
    ens->add_option("--out", ens_out, "prediction file to write")->required()->envname(env("OUT"));
    ens->add_option("PRED", ens_inputs, "input prediction files")->required();

    std::size_t trials = 1000;
    std::uint64_t check_seed = 0;
    auto* check = app.add_subcommand("losscheck", "compare analytic loss gradients with finite differences");
    check->add_option("--trials", trials, "random draws")->capture_default_str()->envname(env("TRIALS"));
    check->add_option("--seed", check_seed, "generator seed")->capture_default_str()->envname(env("SEED"));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*pre) {
            job.input_root = input;
            job.output_root = output;
            return cmd_preprocess(job, size_name);
        }
        if (*split) return cmd_split(manifest, split_seed, folds_out);
        if (*score) return cmd_score(truth, pred_file, task, partition);
        if (*ens) return cmd_ensemble(ens_out, ens_inputs);
        if (*check) return cmd_losscheck(trials, check_seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
