#ifndef SSDBCODI_MODEL_HPP
#define SSDBCODI_MODEL_HPP

#include <memory>
#include <span>
#include <vector>

#include "ssdbcodi/dataset.hpp"
#include "ssdbcodi/expansion.hpp"
#include "ssdbcodi/scoring.hpp"

namespace ssdbcodi {

struct TrainingEntry {
    Index point;
    ClassId cls;    // cluster id or kOutlier
    double weight;  // in [0,1]

    bool operator==(const TrainingEntry&) const = default;
};

/// Reliable normals (R_N) followed by reliable outliers (R_O).
struct TrainingSet {
    std::vector<TrainingEntry> entries;

    std::size_t size() const { return entries.size(); }
    bool empty() const { return entries.empty(); }
    std::size_t outlier_count() const;
};

/// R_N: every clustered point with its cluster and r_score weight.
/// R_O: the k unclustered points with the highest t_score (ties by lower
/// index), weighted by t_score. Throws if k exceeds the unclustered count.
TrainingSet select_reliable(const ClusterAssignment& assignment, const ScoreTable& scores, std::size_t k);

/// Default reliable-outlier count: round(n*|D_O|/|D_L|) when outliers are
/// labeled, otherwise round(0.05*n); clamped to `unclustered`.
std::size_t default_reliable_count(std::size_t n, const LabelSet& labels, std::size_t unclustered);

struct Prediction {
    ClassId cls;
    double outlier_score;  // outlier vote share in [0,1]

    bool operator==(const Prediction&) const = default;
};

/// Instance-weighted classifier trained on reliable points.
class Classifier {
public:
    virtual ~Classifier() = default;
    virtual std::size_t dims() const = 0;
    virtual Prediction predict(std::span<const double> x) const = 0;
};

/// Weighted k-nearest-neighbor vote.
///
/// The k_c nearest training entries (Euclidean, ties by point index) vote
/// with their instance weights. The heaviest class wins; on a tie a cluster
/// beats kOutlier, then the lower cluster id wins. outlier_score is the
/// outlier share of the vote mass. If every neighbor weight is zero the
/// plain neighbor counts are used instead.
class WeightedKnnClassifier final : public Classifier {
public:
    WeightedKnnClassifier(const TrainingSet& ts, const Matrix& features, std::size_t k_c);

    std::size_t dims() const override { return features_.cols(); }
    std::size_t k() const { return k_; }
    std::size_t size() const { return entries_.size(); }
    Prediction predict(std::span<const double> x) const override;

private:
    std::vector<TrainingEntry> entries_;
    Matrix features_;  // row i belongs to entries_[i]
    std::size_t k_;
};

/// Throws std::invalid_argument on an empty training set or k_c outside [1, |ts|].
WeightedKnnClassifier train(const TrainingSet& ts, const Matrix& features, std::size_t k_c);

struct Predictions {
    std::vector<ClassId> clusters;  // cluster id or kOutlier
    std::vector<bool> outliers;
    std::vector<double> outlier_score;
};

Predictions predict(const Classifier& cl, const Matrix& points, unsigned threads = 1);

}  // namespace ssdbcodi

#endif  // SSDBCODI_MODEL_HPP
