#ifndef SSDBCODI_PIPELINE_HPP
#define SSDBCODI_PIPELINE_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ssdbcodi/dataset.hpp"
#include "ssdbcodi/expansion.hpp"
#include "ssdbcodi/metricspace.hpp"
#include "ssdbcodi/model.hpp"
#include "ssdbcodi/scoring.hpp"

namespace ssdbcodi {

struct PipelineParams {
    ScoreParams score;
    std::optional<std::size_t> k_reliable;  // nullopt: default_reliable_count
    std::size_t knn_k = 5;                  // clamped to the training-set size
    unsigned threads = 1;

    void validate() const;
};

struct PipelineResult {
    std::vector<ClassId> clusters;  // cluster id or kOutlier
    std::vector<bool> outliers;
    std::vector<double> outlier_score;
    ScoreTable scores;
    ClusterAssignment assignment;
    TrainingSet training;
    std::vector<double> emax;
    std::size_t k_reliable = 0;  // effective values
    std::size_t knn_k = 0;
};

/// Everything that depends on the labels but not on the score weights:
/// non-terminating expansions, back-traced clusters, E_max and the three
/// component scores.
struct PreparedRun {
    LabelSet labels;
    ClusterAssignment assignment;
    std::vector<double> emax;
    ScoreTable components;
};

PreparedRun prepare(const Dataset& ds, const NeighborhoodIndex& idx, const LabelSet& labels,
                    unsigned threads = 1);

/// Weight-dependent tail: t_score, reliable sets, classifier, predictions.
PipelineResult finish(const Dataset& ds, const PreparedRun& prep, const PipelineParams& params);

PipelineResult run(const Dataset& ds, const NeighborhoodIndex& idx, const LabelSet& labels,
                   const PipelineParams& params);
PipelineResult run(const Dataset& ds, const LabelSet& labels, const PipelineParams& params);

struct TuneOptions {
    double grid_step = 0.1;
    std::size_t folds = 5;
    std::uint64_t seed = 0;
};

struct TuneCell {
    double alpha;
    double beta;
    double objective;  // mean over folds
};

struct TuneReport {
    std::vector<TuneCell> grid;
    double best_alpha = 0.0;
    double best_beta = 0.0;
    double best_objective = 0.0;
};

/// (alpha, beta) pairs on the lattice {0, step, ..., 1}^2 with alpha+beta <= 1,
/// ascending by alpha then beta.
std::vector<std::pair<double, double>> weight_lattice(double step);

/// Splits the labeled set into `folds` disjoint folds. Normals are dealt
/// round-robin first, then outliers, each after a seeded shuffle, so every
/// fold hides at least one normal when |normal| >= folds.
std::vector<std::vector<Index>> label_folds(const LabelSet& labels, std::size_t folds, std::uint64_t seed);

/// Validation objective on hidden labels: mean of AUC and Rand Index, or
/// the Rand Index alone when no hidden outlier exists.
double validation_objective(const PipelineResult& result, const LabelSet& hidden);

/// Cross-validated grid search over (alpha, beta). Best cell is the largest
/// fold-mean objective, ties to the lexicographically smallest pair.
TuneReport tune(const Dataset& ds, const LabelSet& labels, const PipelineParams& base,
                const TuneOptions& options);
TuneReport tune(const Dataset& ds, const NeighborhoodIndex& idx, const LabelSet& labels,
                const PipelineParams& base, const TuneOptions& options);

}  // namespace ssdbcodi

#endif  // SSDBCODI_PIPELINE_HPP
