#include "ssdbcodi/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "ssdbcodi/parallel.hpp"

namespace ssdbcodi {

std::size_t TrainingSet::outlier_count() const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.cls == kOutlier; }));
}

TrainingSet select_reliable(const ClusterAssignment& assignment, const ScoreTable& scores, std::size_t k) {
    const std::size_t n = assignment.size();
    if (scores.r_score.size() != n || scores.t_score.size() != n)
        throw std::invalid_argument("select_reliable: score table size mismatch");

    TrainingSet ts;
    std::vector<Index> unclustered;
    for (Index i = 0; i < n; ++i) {
        if (assignment.clustered(i))
            ts.entries.push_back({i, assignment.assign[i], scores.r_score[i]});
        else
            unclustered.push_back(i);
    }
    if (k > unclustered.size())
        throw std::invalid_argument("reliable outlier count exceeds the number of unclustered points");

    std::partial_sort(unclustered.begin(), unclustered.begin() + static_cast<std::ptrdiff_t>(k),
                      unclustered.end(), [&](Index a, Index b) {
                          const double ta = scores.t_score[a], tb = scores.t_score[b];
                          return ta > tb || (ta == tb && a < b);
                      });
    for (std::size_t j = 0; j < k; ++j)
        ts.entries.push_back({unclustered[j], kOutlier, scores.t_score[unclustered[j]]});
    return ts;
}

std::size_t default_reliable_count(std::size_t n, const LabelSet& labels, std::size_t unclustered) {
    double estimate = 0.05 * static_cast<double>(n);
    if (!labels.outliers.empty())
        estimate = static_cast<double>(n) * static_cast<double>(labels.outliers.size()) /
                   static_cast<double>(labels.size());
    const auto k = static_cast<std::size_t>(std::floor(estimate + 0.5));
    return std::min(k, unclustered);
}

WeightedKnnClassifier::WeightedKnnClassifier(const TrainingSet& ts, const Matrix& features, std::size_t k_c)
    : k_(k_c) {
    if (ts.empty()) throw std::invalid_argument("cannot train on an empty training set");
    if (k_c < 1 || k_c > ts.size()) throw std::invalid_argument("k_c must lie in [1, |training set|]");
    entries_ = ts.entries;
    // Canonical order makes the model independent of entry order.
    std::sort(entries_.begin(), entries_.end(),
              [](const auto& a, const auto& b) { return a.point < b.point; });
    features_ = Matrix(entries_.size(), features.cols());
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& e = entries_[i];
        if (e.point >= features.rows()) throw std::out_of_range("training entry index out of range");
        if (i > 0 && entries_[i - 1].point == e.point)
            throw std::invalid_argument("training set lists a point twice");
        if (!(e.weight >= 0.0)) throw std::invalid_argument("instance weights must be non-negative");
        std::copy_n(features.row(e.point).begin(), features.cols(), features_.row(i).begin());
    }
}

Prediction WeightedKnnClassifier::predict(std::span<const double> x) const {
    if (x.size() != features_.cols()) throw std::invalid_argument("query dimension mismatch");
    std::vector<std::pair<double, std::size_t>> near(entries_.size());
    for (std::size_t i = 0; i < entries_.size(); ++i) near[i] = {euclidean(x, features_.row(i)), i};
    // Entries are sorted by point index, so the pair order breaks distance ties by index.
    std::partial_sort(near.begin(), near.begin() + static_cast<std::ptrdiff_t>(k_), near.end());

    std::map<ClassId, double> mass;
    std::map<ClassId, double> count;
    double total = 0.0;
    for (std::size_t j = 0; j < k_; ++j) {
        const auto& e = entries_[near[j].second];
        mass[e.cls] += e.weight;
        count[e.cls] += 1.0;
        total += e.weight;
    }
    const auto& votes = total > 0.0 ? mass : count;
    const double votes_total = total > 0.0 ? total : static_cast<double>(k_);

    // Heaviest cluster, lowest id on ties; kOutlier needs a strict excess.
    Prediction best{kOutlier, 0.0};
    double best_mass = -1.0;
    for (const auto& [cls, m] : votes) {
        if (cls == kOutlier) continue;
        if (m > best_mass) {
            best_mass = m;
            best.cls = cls;
        }
    }
    const auto out_it = votes.find(kOutlier);
    const double outlier_mass = out_it == votes.end() ? 0.0 : out_it->second;
    if (out_it != votes.end() && outlier_mass > best_mass) best.cls = kOutlier;
    best.outlier_score = std::clamp(outlier_mass / votes_total, 0.0, 1.0);
    return best;
}

WeightedKnnClassifier train(const TrainingSet& ts, const Matrix& features, std::size_t k_c) {
    return WeightedKnnClassifier(ts, features, k_c);
}

Predictions predict(const Classifier& cl, const Matrix& points, unsigned threads) {
    if (points.cols() != cl.dims()) throw std::invalid_argument("feature dimension mismatch");
    const std::size_t n = points.rows();
    std::vector<Prediction> raw(n);
    parallel_for(n, threads, [&](std::size_t i) { raw[i] = cl.predict(points.row(i)); });
    Predictions out;
    out.clusters.resize(n);
    out.outliers.resize(n);
    out.outlier_score.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.clusters[i] = raw[i].cls;
        out.outliers[i] = raw[i].cls == kOutlier;
        out.outlier_score[i] = raw[i].outlier_score;
    }
    return out;
}

}  // namespace ssdbcodi
