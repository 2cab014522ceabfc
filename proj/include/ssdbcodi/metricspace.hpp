#ifndef SSDBCODI_METRICSPACE_HPP
#define SSDBCODI_METRICSPACE_HPP

#include <span>
#include <vector>

#include "ssdbcodi/dataset.hpp"
#include "ssdbcodi/types.hpp"

namespace ssdbcodi {

/// Dense Euclidean distance matrix plus per-point core distances.
///
/// The neighborhood of a point excludes the point itself: core(p) is the
/// distance to its min_pts-th nearest other point. Immutable after
/// construction and safe to share between threads.
class NeighborhoodIndex {
public:
    /// Throws std::invalid_argument unless n >= 2 and 1 <= min_pts <= n-1.
    NeighborhoodIndex(const Matrix& points, std::size_t min_pts, unsigned threads = 1);

    std::size_t size() const { return n_; }
    std::size_t min_pts() const { return min_pts_; }

    double dist(Index p, Index q) const { return dist_[p * n_ + q]; }
    std::span<const double> dist_row(Index p) const { return {dist_.data() + p * n_, n_}; }
    double core(Index p) const { return core_[p]; }
    const std::vector<double>& core_distances() const { return core_; }

    /// max(core(p), core(q), dist(p,q)) without bounds checks.
    double reach(Index p, Index q) const {
        return std::max({core_[p], core_[q], dist_[p * n_ + q]});
    }

    /// Bounds-checked reachability distance.
    double reach_distance(Index p, Index q) const;

    /// The m points (q excluded) with the smallest reachability distance to q,
    /// ascending, ties by point index.
    std::vector<Index> knn_by_rdist(Index q, std::size_t m) const;

    /// Whether a chain q = p0..pk of core objects at epsilon exists with
    /// every hop no longer than epsilon.
    bool is_density_reachable(Index p, Index q, double epsilon) const;

private:
    void check(Index p) const;

    std::size_t n_;
    std::size_t min_pts_;
    std::vector<double> dist_;
    std::vector<double> core_;
};

NeighborhoodIndex build_index(const Dataset& ds, std::size_t min_pts, unsigned threads = 1);

}  // namespace ssdbcodi

#endif  // SSDBCODI_METRICSPACE_HPP
