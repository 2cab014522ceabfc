#ifndef SSDBCODI_SCORING_HPP
#define SSDBCODI_SCORING_HPP

#include <span>
#include <vector>

#include "ssdbcodi/dataset.hpp"
#include "ssdbcodi/metricspace.hpp"

namespace ssdbcodi {

/// Weights of the combined outlier score. The similarity weight is 1-alpha-beta.
struct ScoreParams {
    double alpha = 1.0 / 3.0;
    double beta = 1.0 / 3.0;
    std::size_t min_pts = 3;

    /// Throws std::invalid_argument when a weight leaves [0,1], alpha+beta > 1,
    /// or min_pts is 0.
    void validate() const;
};

struct ScoreTable {
    std::vector<double> r_score;
    std::vector<double> l_score;
    std::vector<double> sim_score;
    std::vector<double> t_score;
};

/// exp(-emax) per point; emax must be non-negative.
std::vector<double> r_score(std::span<const double> emax);

/// Mean reachability distance to the min_pts rDist-nearest neighbors of q.
double local_density(const NeighborhoodIndex& idx, Index q);
std::vector<double> local_densities(const NeighborhoodIndex& idx, unsigned threads = 1);

/// exp(-ld) per point; ld must be non-negative.
std::vector<double> l_score(std::span<const double> ld);

/// exp(-distance to the nearest labeled outlier); 0 when no outlier is labeled.
double sim_score(const Dataset& ds, const LabelSet& labels, Index q);
std::vector<double> sim_scores(const Dataset& ds, const LabelSet& labels);

/// alpha(1-r) + beta(1-l) + (1-alpha-beta) sim, per point.
std::vector<double> t_score(const ScoreTable& st, const ScoreParams& params);

/// Fills r, l and sim scores; t_score is left empty.
ScoreTable component_scores(const Dataset& ds, const NeighborhoodIndex& idx, const LabelSet& labels,
                            std::span<const double> emax, unsigned threads = 1);

}  // namespace ssdbcodi

#endif  // SSDBCODI_SCORING_HPP
