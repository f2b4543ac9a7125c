#include "texlbp/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "texlbp/parallel.hpp"

namespace texlbp {

std::int64_t ConfusionMatrix::total() const {
    std::int64_t sum = 0;
    for (const auto& row : counts)
        for (const std::int64_t c : row) sum += c;
    return sum;
}

std::int64_t ConfusionMatrix::trace() const {
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) sum += counts[i][i];
    return sum;
}

namespace {

// rejection-sampled bound keeps the draw sequence identical across
// standard libraries, unlike uniform_int_distribution
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % bound;
}

void fisher_yates(std::vector<std::size_t>& items, std::mt19937_64& rng) {
    for (std::size_t i = items.size(); i > 1; --i)
        std::swap(items[i - 1], items[bounded_draw(rng, i)]);
}

}  // namespace

FoldPlan stratified_kfold(const std::vector<std::string>& labels,
                          int fold_count, std::uint64_t seed) {
    if (fold_count < 2) throw std::invalid_argument("fold count must be at least 2");
    if (labels.empty()) throw std::invalid_argument("no samples to split");

    std::map<std::string, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);

    std::mt19937_64 rng(seed);
    FoldPlan plan;
    plan.assignments.assign(labels.size(), 0);
    plan.fold_count = fold_count;
    plan.seed = seed;
    for (auto& [name, members] : by_class) {
        if (members.size() < static_cast<std::size_t>(fold_count))
            throw std::invalid_argument("class '" + name + "' has " +
                                        std::to_string(members.size()) +
                                        " samples, fewer than the fold count " +
                                        std::to_string(fold_count));
        fisher_yates(members, rng);
        for (std::size_t pos = 0; pos < members.size(); ++pos)
            plan.assignments[members[pos]] = static_cast<int>(pos % fold_count);
    }
    return plan;
}

FoldPlan loo_split(std::size_t n) {
    if (n < 2) throw std::invalid_argument("leave-one-out needs at least 2 samples");
    FoldPlan plan;
    plan.fold_count = static_cast<int>(n);
    plan.assignments.resize(n);
    for (std::size_t i = 0; i < n; ++i) plan.assignments[i] = static_cast<int>(i);
    return plan;
}

namespace {

// k nearest over every sample outside `exclude_fold`, then vote. Shares the
// tie rules with knn_predict: ascending (distance, index).
std::string predict_excluding(const FeatureStore& store, const FoldPlan& plan,
                              int exclude_fold, std::span<const double> query,
                              const KnnConfig& cfg) {
    std::vector<std::pair<double, std::size_t>> dist;
    dist.reserve(store.samples.size());
    for (std::size_t j = 0; j < store.samples.size(); ++j) {
        if (plan.assignments[j] == exclude_fold) continue;
        dist.emplace_back(
            metric_distance(cfg.metric, query, store.samples[j].features.values), j);
    }
    if (dist.empty()) throw std::invalid_argument("a fold holds every training sample");
    const std::size_t k = std::min(static_cast<std::size_t>(cfg.k), dist.size());
    std::partial_sort(dist.begin(), dist.begin() + k, dist.end());
    std::vector<Neighbor> neighbors;
    neighbors.reserve(k);
    for (std::size_t i = 0; i < k; ++i)
        neighbors.push_back({dist[i].second, dist[i].first,
                             store.samples[dist[i].second].label});
    return vote(neighbors, cfg.weighting);
}

}  // namespace

EvalReport cross_validate(const FeatureStore& store, const KnnConfig& knn,
                          const FoldPlan& plan, int threads) {
    const std::size_t n = store.samples.size();
    if (plan.assignments.size() != n)
        throw std::invalid_argument("fold plan covers " +
                                    std::to_string(plan.assignments.size()) +
                                    " samples, store has " + std::to_string(n));
    for (const int f : plan.assignments)
        if (f < 0 || f >= plan.fold_count)
            throw std::invalid_argument("fold index out of range in plan");
    if (knn.k < 1) throw std::invalid_argument("k must be at least 1");

    std::map<std::string, std::size_t> class_index;
    for (std::size_t c = 0; c < store.class_names.size(); ++c)
        class_index[store.class_names[c]] = c;

    std::vector<std::size_t> predicted(n);
    parallel_for(n, threads, [&](std::size_t i) {
        const std::string label =
            predict_excluding(store, plan, plan.assignments[i],
                              store.samples[i].features.values, knn);
        predicted[i] = class_index.at(label);
    });

    EvalReport report;
    report.matrix.classes = store.class_names;
    report.matrix.counts.assign(store.class_names.size(),
                                std::vector<std::int64_t>(store.class_names.size(), 0));
    for (std::size_t i = 0; i < n; ++i)
        ++report.matrix.counts[class_index.at(store.samples[i].label)][predicted[i]];

    report.accuracy = static_cast<double>(report.matrix.trace()) /
                      static_cast<double>(report.matrix.total());
    report.per_class = precision_recall(report.matrix);
    report.kappa = cohen_kappa(report.matrix);
    report.knn = knn;
    report.configs = store.configs;
    return report;
}

std::vector<ClassMetrics> precision_recall(const ConfusionMatrix& m) {
    const std::size_t c = m.classes.size();
    std::vector<ClassMetrics> out(c);
    for (std::size_t i = 0; i < c; ++i) {
        std::int64_t rowsum = 0, colsum = 0;
        for (std::size_t j = 0; j < c; ++j) {
            rowsum += m.counts[i][j];
            colsum += m.counts[j][i];
        }
        const double diag = static_cast<double>(m.counts[i][i]);
        out[i].precision = colsum > 0 ? diag / static_cast<double>(colsum) : 0.0;
        out[i].recall = rowsum > 0 ? diag / static_cast<double>(rowsum) : 0.0;
    }
    return out;
}

double cohen_kappa(const ConfusionMatrix& m) {
    const std::int64_t total = m.total();
    if (total <= 0) throw std::invalid_argument("empty confusion matrix");
    const double t = static_cast<double>(total);
    const double po = static_cast<double>(m.trace()) / t;
    double pe = 0.0;
    for (std::size_t i = 0; i < m.classes.size(); ++i) {
        std::int64_t rowsum = 0, colsum = 0;
        for (std::size_t j = 0; j < m.classes.size(); ++j) {
            rowsum += m.counts[i][j];
            colsum += m.counts[j][i];
        }
        pe += (static_cast<double>(rowsum) / t) * (static_cast<double>(colsum) / t);
    }
    if (pe >= 1.0) return po >= 1.0 ? 1.0 : 0.0;
    return (po - pe) / (1.0 - pe);
}

namespace {

std::string fixed4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::size_t digits(std::int64_t v) {
    std::size_t d = 1;
    while (v >= 10) {
        v /= 10;
        ++d;
    }
    return d;
}

std::string metric_echo(const KnnConfig& knn) {
    std::string out = "metric=";
    if (knn.metric.kind == MetricKind::chi_square) {
        out += "chi2";
    } else {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", knn.metric.order);
        out += std::string("minkowski order=") + buf;
    }
    out += " k=" + std::to_string(knn.k);
    out += " weighting=";
    out += knn.weighting == VoteWeighting::uniform ? "uniform" : "inverse";
    return out;
}

}  // namespace

std::string render_report(const EvalReport& r) {
    const ConfusionMatrix& m = r.matrix;
    std::ostringstream os;
    os << "configs=" << format_configs(r.configs) << '\n';
    os << metric_echo(r.knn) << '\n';
    os << "samples=" << m.total() << " classes=" << m.classes.size() << '\n';
    os << "accuracy=" << fixed4(r.accuracy) << '\n';
    os << "kappa=" << fixed4(r.kappa) << '\n';
    os << '\n';

    std::size_t label_w = 5;  // "class"
    for (const std::string& name : m.classes) label_w = std::max(label_w, name.size());

    auto pad_left = [&os](const std::string& text, std::size_t width) {
        for (std::size_t i = text.size(); i < width; ++i) os << ' ';
        os << text;
    };
    auto pad_right = [&os](const std::string& text, std::size_t width) {
        os << text;
        for (std::size_t i = text.size(); i < width; ++i) os << ' ';
    };

    pad_right("class", label_w);
    os << "  precision  recall\n";
    bool zero_denominator = false;
    for (std::size_t i = 0; i < m.classes.size(); ++i) {
        std::int64_t rowsum = 0, colsum = 0;
        for (std::size_t j = 0; j < m.classes.size(); ++j) {
            rowsum += m.counts[i][j];
            colsum += m.counts[j][i];
        }
        if (rowsum == 0 || colsum == 0) zero_denominator = true;
        pad_right(m.classes[i], label_w);
        os << "  ";
        pad_left(fixed4(r.per_class[i].precision), 9);
        os << "  ";
        pad_left(fixed4(r.per_class[i].recall), 6);
        os << '\n';
    }
    if (zero_denominator)
        os << "note: precision/recall reported as 0 where the denominator is 0\n";
    os << '\n';

    os << "confusion matrix (rows=true, cols=predicted)\n";
    std::vector<std::size_t> col_w(m.classes.size());
    for (std::size_t j = 0; j < m.classes.size(); ++j) {
        col_w[j] = m.classes[j].size();
        for (std::size_t i = 0; i < m.classes.size(); ++i)
            col_w[j] = std::max(col_w[j], digits(m.counts[i][j]));
    }
    pad_right("", label_w);
    for (std::size_t j = 0; j < m.classes.size(); ++j) {
        os << "  ";
        pad_left(m.classes[j], col_w[j]);
    }
    os << '\n';
    for (std::size_t i = 0; i < m.classes.size(); ++i) {
        pad_right(m.classes[i], label_w);
        for (std::size_t j = 0; j < m.classes.size(); ++j) {
            os << "  ";
            pad_left(std::to_string(m.counts[i][j]), col_w[j]);
        }
        os << '\n';
    }
    return os.str();
}

std::string confusion_csv(const ConfusionMatrix& m) {
    std::ostringstream os;
    os << "class";
    for (const std::string& name : m.classes) os << ',' << name;
    os << '\n';
    for (std::size_t i = 0; i < m.classes.size(); ++i) {
        os << m.classes[i];
        for (std::size_t j = 0; j < m.classes.size(); ++j) os << ',' << m.counts[i][j];
        os << '\n';
    }
    return os.str();
}

}  // namespace texlbp
