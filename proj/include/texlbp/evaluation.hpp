#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "texlbp/classifier.hpp"

namespace texlbp {

struct FoldPlan {
    std::vector<int> assignments;  // per-sample fold index
    int fold_count = 0;
    std::uint64_t seed = 0;
};

struct ConfusionMatrix {
    std::vector<std::string> classes;              // sorted
    std::vector<std::vector<std::int64_t>> counts; // rows = true, cols = predicted

    std::int64_t total() const;
    std::int64_t trace() const;
};

struct ClassMetrics {
    double precision = 0.0;
    double recall = 0.0;
};

struct EvalReport {
    ConfusionMatrix matrix;
    double accuracy = 0.0;
    std::vector<ClassMetrics> per_class;
    double kappa = 0.0;
    KnnConfig knn;                   // config echo
    std::vector<LbpConfig> configs;  // config echo
};

// Per class: seeded Fisher-Yates shuffle, then round-robin dealing, so fold
// sizes within a class differ by at most one. The mt19937_64 stream and the
// shuffle are pinned here (not std::shuffle), so identical seeds give
// identical plans on any standard library.
FoldPlan stratified_kfold(const std::vector<std::string>& labels,
                          int fold_count, std::uint64_t seed);

// One singleton fold per sample.
FoldPlan loo_split(std::size_t n);

// Trains on the complement of each sample's fold, predicts the held-out
// sample, and pools everything into one confusion matrix. Pure function of
// (store, knn, plan); thread count only changes the schedule.
EvalReport cross_validate(const FeatureStore& store, const KnnConfig& knn,
                          const FoldPlan& plan, int threads = 1);

// precision_c = m[c][c]/colsum_c, recall_c = m[c][c]/rowsum_c, 0 when the
// denominator is 0.
std::vector<ClassMetrics> precision_recall(const ConfusionMatrix& m);

// (p_o - p_e) / (1 - p_e); 1.0 for perfect agreement when p_e = 1, else 0.
double cohen_kappa(const ConfusionMatrix& m);

// Deterministic plain-text block: config echo, accuracy and kappa to four
// decimals, per-class precision/recall table, labeled confusion matrix.
std::string render_report(const EvalReport& r);

// `class` header row/column, integer cells.
std::string confusion_csv(const ConfusionMatrix& m);

}  // namespace texlbp
