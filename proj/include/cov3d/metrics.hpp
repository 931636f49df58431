#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace cov3d {

enum class Presence { negative, positive };

/// positive iff 1 - p_0 >= threshold.
Presence presence_decision(std::span<const double> p, double threshold = 0.5);

/// argmax over the severity classes 1..4 only; ties go to the lower severity.
/// Returns the class index (1 = mild ... 4 = critical).
int severity_decision(std::span<const double> p);

struct F1Report {
    double macro = 0.0;
    std::vector<double> per_class;
    /// Classes whose 2TP + FP + FN was zero; they score 0.
    std::vector<int> undefined_classes;
};

/// Unweighted mean of per-class F1 = 2TP / (2TP + FP + FN) over `classes`.
/// Throws std::invalid_argument on length mismatch, an empty class list, or
/// a label not in `classes`.
F1Report macro_f1_report(std::span<const int> truth, std::span<const int> pred, std::span<const int> classes);
double macro_f1(std::span<const int> truth, std::span<const int> pred, std::span<const int> classes);

using ProbVector = std::vector<double>;

/// scan_id -> probability vector, ordered by scan_id.
using PredictionSet = std::map<std::string, ProbVector>;

/// Per-scan element-wise mean. Throws std::invalid_argument on an empty list,
/// differing key sets, or differing vector lengths.
PredictionSet ensemble_average(const std::vector<PredictionSet>& sets);

/// Prediction file: header "scan_id,p0,p1,p2,p3,p4", one row per scan,
/// probabilities with 17 significant digits (exact double round trip).
void write_predictions(const PredictionSet& preds, const std::filesystem::path& path);

/// Accepts comma or tab delimiters and an optional header. Rows must have
/// five probabilities; errors report the line number.
PredictionSet read_predictions(const std::filesystem::path& path);

/// 17 significant digits, shortest exponent form ("%.17g").
std::string format_probability(double x);

}  // namespace cov3d
