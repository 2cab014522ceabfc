#ifndef SSDBCODI_BASELINES_HPP
#define SSDBCODI_BASELINES_HPP

#include <cstdint>
#include <vector>

#include "ssdbcodi/dataset.hpp"
#include "ssdbcodi/metricspace.hpp"

namespace ssdbcodi {

/// DBSCAN with self-excluded neighborhoods: p is a core object when at least
/// min_pts other points lie within epsilon. Clusters are numbered by their
/// lowest-index core point; a border point joins the cluster of its
/// lowest-index core neighbor; the rest are kNoise.
std::vector<ClassId> dbscan(const NeighborhoodIndex& idx, double epsilon, std::size_t min_pts);

struct KMeansResult {
    std::vector<ClassId> assign;
    Matrix centroids;
    /// Sum of squared distances after each assignment step.
    std::vector<double> objective;
    std::size_t iterations = 0;
};

/// Lloyd's algorithm from k-means++ seeding. Stops at an assignment fixed
/// point or after max_iter updates. Empty clusters keep their centroid.
KMeansResult kmeans(const Dataset& ds, std::size_t k, std::uint64_t seed, std::size_t max_iter = 300);

/// Local outlier factor over the k nearest other points (distance ties at
/// the k-distance are included). Higher means more outlying.
std::vector<double> lof(const NeighborhoodIndex& idx, std::size_t k);

/// Original SSDBSCAN fallback: every unclustered point takes the cluster of
/// its nearest clustered point (ties by index).
std::vector<ClassId> assign_unclustered_to_nearest(const NeighborhoodIndex& idx,
                                                   const std::vector<ClassId>& assignment);

}  // namespace ssdbcodi

#endif  // SSDBCODI_BASELINES_HPP
