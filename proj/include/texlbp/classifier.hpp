#pragma once

#include <span>
#include <string>
#include <vector>

#include "texlbp/features.hpp"

namespace texlbp {

enum class MetricKind { chi_square, minkowski };

struct DistanceMetric {
    MetricKind kind = MetricKind::chi_square;
    double order = 2.0;  // minkowski only

    bool operator==(const DistanceMetric&) const = default;
};

enum class VoteWeighting { uniform, inverse_distance };

struct KnnConfig {
    int k = 1;
    DistanceMetric metric;
    VoteWeighting weighting = VoteWeighting::uniform;
};

struct Neighbor {
    std::size_t index = 0;  // position in the training store
    double distance = 0.0;
    std::string label;
};

struct Prediction {
    std::string label;
    std::vector<Neighbor> neighbors;  // ascending distance, ties by index
};

// 1/2 * sum (p-q)^2/(p+q); bins where p+q = 0 contribute nothing.
// At most 1 for two L1-normalized histograms.
double chi_square(std::span<const double> p, std::span<const double> q);

// (sum |x-y|^order)^(1/order); order 2 is Euclidean.
double minkowski(std::span<const double> x, std::span<const double> y, double order);

double metric_distance(const DistanceMetric& metric,
                       std::span<const double> a, std::span<const double> b);

// Weighted vote over (distance, label) pairs. Uniform weighting counts 1
// per neighbor; inverse_distance uses 1/(d + 1e-12). Ties go to the label
// with the smallest distance among the tied ones, then lexicographically.
std::string vote(const std::vector<Neighbor>& neighbors, VoteWeighting weighting);

// Brute-force exact k-NN over the store; k is clamped to the store size.
// Equal distances at the k boundary resolve to the lower training index.
Prediction knn_predict(const FeatureStore& train, const FeatureVector& query,
                       const KnnConfig& cfg);

}  // namespace texlbp
