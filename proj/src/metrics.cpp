#include "cov3d/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "cov3d/category.hpp"
#include "cov3d/delimited.hpp"
#include "cov3d/error.hpp"

namespace cov3d {

Presence presence_decision(std::span<const double> p, double threshold) {
    if (p.empty()) throw std::invalid_argument("presence_decision: empty probability vector");
    return 1.0 - p[0] >= threshold ? Presence::positive : Presence::negative;
}

int severity_decision(std::span<const double> p) {
    if (p.size() < 2) throw std::invalid_argument("severity_decision: need at least 2 classes");
    int best = 1;
    for (std::size_t c = 2; c < p.size(); ++c) {
        if (p[c] > p[static_cast<std::size_t>(best)]) best = static_cast<int>(c);
    }
    return best;
}

F1Report macro_f1_report(std::span<const int> truth, std::span<const int> pred, std::span<const int> classes) {
    if (truth.size() != pred.size()) throw std::invalid_argument("macro_f1: truth/prediction length mismatch");
    if (classes.empty()) throw std::invalid_argument("macro_f1: empty class list");

    const auto index_of = [&](int label) {
        const auto it = std::find(classes.begin(), classes.end(), label);
        if (it == classes.end()) throw std::invalid_argument("macro_f1: label " + std::to_string(label) +
                                                             " not in class list");
        return static_cast<std::size_t>(it - classes.begin());
    };

    std::vector<std::size_t> tp(classes.size(), 0), fp(classes.size(), 0), fn(classes.size(), 0);
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const auto t = index_of(truth[i]);
        const auto p = index_of(pred[i]);
        if (t == p) {
            ++tp[t];
        } else {
            ++fn[t];
            ++fp[p];
        }
    }

    F1Report r;
    r.per_class.resize(classes.size());
    double sum = 0.0;
    for (std::size_t k = 0; k < classes.size(); ++k) {
        const std::size_t denom = 2 * tp[k] + fp[k] + fn[k];
        if (denom == 0) {
            r.per_class[k] = 0.0;
            r.undefined_classes.push_back(classes[k]);
        } else {
            r.per_class[k] = 2.0 * static_cast<double>(tp[k]) / static_cast<double>(denom);
        }
        sum += r.per_class[k];
    }
    r.macro = sum / static_cast<double>(classes.size());
    return r;
}

double macro_f1(std::span<const int> truth, std::span<const int> pred, std::span<const int> classes) {
    return macro_f1_report(truth, pred, classes).macro;
}

PredictionSet ensemble_average(const std::vector<PredictionSet>& sets) {
    if (sets.empty()) throw std::invalid_argument("ensemble_average: no prediction sets");
    for (const auto& s : sets) {
        if (s.size() != sets.front().size()) throw std::invalid_argument("ensemble_average: scan id sets differ");
    }
    PredictionSet out;
    std::vector<double> column(sets.size());
    for (const auto& [id, p] : sets.front()) {
        std::vector<const ProbVector*> members;
        members.reserve(sets.size());
        for (const auto& s : sets) {
            const auto it = s.find(id);
            if (it == s.end()) throw std::invalid_argument("ensemble_average: scan " + id + " missing from a set");
            if (it->second.size() != p.size()) {
                throw std::invalid_argument("ensemble_average: vector length mismatch for scan " + id);
            }
            members.push_back(&it->second);
        }
        // Sorted running mean: independent of list order, and exact when
        // all members agree.
        ProbVector mean(p.size());
        for (std::size_t c = 0; c < p.size(); ++c) {
            for (std::size_t k = 0; k < members.size(); ++k) column[k] = (*members[k])[c];
            std::sort(column.begin(), column.end());
            double m = column[0];
            for (std::size_t k = 1; k < column.size(); ++k) m += (column[k] - m) / static_cast<double>(k + 1);
            mean[c] = m;
        }
        out.emplace(id, std::move(mean));
    }
    return out;
}

std::string format_probability(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_predictions(const PredictionSet& preds, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << "scan_id";
    for (int c = 0; c < category::kCount; ++c) out << ",p" << c;
    out << '\n';
    for (const auto& [id, p] : preds) {
        if (p.size() != static_cast<std::size_t>(category::kCount)) {
            throw Error("write_predictions: scan " + id + " has " + std::to_string(p.size()) + " probabilities");
        }
        out << id;
        for (double x : p) out << ',' << format_probability(x);
        out << '\n';
    }
    if (!out) throw IoError("write failed: " + path.string());
}

PredictionSet read_predictions(const std::filesystem::path& path) {
    const auto table = read_delimited(path, {"scan_id", "p0", "p1", "p2", "p3", "p4"});
    PredictionSet out;
    for (const auto& row : table.rows) {
        if (row.fields.size() != 1 + static_cast<std::size_t>(category::kCount)) {
            throw FormatError(at_line(path, row.line, "expected scan_id and 5 probabilities"));
        }
        ProbVector p;
        for (std::size_t c = 1; c < row.fields.size(); ++c) {
            const auto& f = row.fields[c];
            char* end = nullptr;
            const double x = std::strtod(f.c_str(), &end);
            if (f.empty() || end != f.c_str() + f.size() || !(x >= 0.0 && x <= 1.0)) {
                throw FormatError(at_line(path, row.line, "bad probability '" + f + "'"));
            }
            p.push_back(x);
        }
        if (!out.emplace(row.fields[0], std::move(p)).second) {
            throw FormatError(at_line(path, row.line, "duplicate scan_id " + row.fields[0]));
        }
    }
    return out;
}

}  // namespace cov3d
