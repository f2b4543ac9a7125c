#include "texlbp/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace texlbp {

double chi_square(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size())
        throw std::invalid_argument("chi_square: length mismatch (" + std::to_string(p.size()) +
                                    " vs " + std::to_string(q.size()) + ")");
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double denom = p[i] + q[i];
        if (denom > 0.0) {
            const double diff = p[i] - q[i];
            acc += diff * diff / denom;
        }
    }
    return 0.5 * acc;
}

double minkowski(std::span<const double> x, std::span<const double> y, double order) {
    if (x.size() != y.size())
        throw std::invalid_argument("minkowski: length mismatch (" + std::to_string(x.size()) +
                                    " vs " + std::to_string(y.size()) + ")");
    if (!(order > 0.0)) throw std::invalid_argument("minkowski order must be positive");
    double acc = 0.0;
    if (order == 2.0) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double d = x[i] - y[i];
            acc += d * d;
        }
        return std::sqrt(acc);
    }
    if (order == 1.0) {
        for (std::size_t i = 0; i < x.size(); ++i) acc += std::abs(x[i] - y[i]);
        return acc;
    }
    for (std::size_t i = 0; i < x.size(); ++i) acc += std::pow(std::abs(x[i] - y[i]), order);
    return std::pow(acc, 1.0 / order);
}

double metric_distance(const DistanceMetric& metric,
                       std::span<const double> a, std::span<const double> b) {
    if (metric.kind == MetricKind::chi_square) return chi_square(a, b);
    return minkowski(a, b, metric.order);
}

std::string vote(const std::vector<Neighbor>& neighbors, VoteWeighting weighting) {
    if (neighbors.empty()) throw std::invalid_argument("cannot vote over zero neighbors");

    struct Tally {
        double weight = 0.0;
        double min_distance = std::numeric_limits<double>::infinity();
    };
    std::map<std::string, Tally> tallies;
    for (const Neighbor& n : neighbors) {
        Tally& t = tallies[n.label];
        t.weight += weighting == VoteWeighting::uniform ? 1.0 : 1.0 / (n.distance + 1e-12);
        t.min_distance = std::min(t.min_distance, n.distance);
    }

    // map iteration is in label order, so keeping strict improvements only
    // settles full ties on the lexicographically smallest label
    const std::pair<const std::string, Tally>* best = nullptr;
    for (const auto& entry : tallies) {
        if (!best || entry.second.weight > best->second.weight ||
            (entry.second.weight == best->second.weight &&
             entry.second.min_distance < best->second.min_distance))
            best = &entry;
    }
    return best->first;
}

Prediction knn_predict(const FeatureStore& train, const FeatureVector& query,
                       const KnnConfig& cfg) {
    if (train.samples.empty()) throw std::invalid_argument("empty training set");
    if (cfg.k < 1) throw std::invalid_argument("k must be at least 1");
    if (!layout_matches(query, train.configs))
        throw std::invalid_argument("query layout does not match the training store configs (" +
                                    format_configs(train.configs) + ")");

    const std::size_t n = train.samples.size();
    std::vector<std::pair<double, std::size_t>> dist(n);
    for (std::size_t j = 0; j < n; ++j)
        dist[j] = {metric_distance(cfg.metric, query.values, train.samples[j].features.values), j};

    const std::size_t k = std::min(static_cast<std::size_t>(cfg.k), n);
    std::partial_sort(dist.begin(), dist.begin() + k, dist.end());

    Prediction pred;
    pred.neighbors.reserve(k);
    for (std::size_t i = 0; i < k; ++i)
        pred.neighbors.push_back({dist[i].second, dist[i].first,
                                  train.samples[dist[i].second].label});
    pred.label = vote(pred.neighbors, cfg.weighting);
    return pred;
}

}  // namespace texlbp
