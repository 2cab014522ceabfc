#ifndef SSDBCODI_EXPANSION_HPP
#define SSDBCODI_EXPANSION_HPP

#include <optional>
#include <vector>

#include "ssdbcodi/dataset.hpp"
#include "ssdbcodi/metricspace.hpp"

namespace ssdbcodi {

struct ExpansionStep {
    Index point;
    double key;  // reachability distance at which the point was attached

    bool operator==(const ExpansionStep&) const = default;
};

/// One Prim-order expansion from a labeled normal root.
struct ExpansionRecord {
    Index root = 0;
    std::vector<ExpansionStep> order;
    /// Largest key inserted up to and including each point; +inf for points
    /// never inserted (terminating runs only).
    std::vector<double> prefix_max;
    /// Position in `order` of the first point whose user label differs from
    /// the root's. Labeled outliers always differ.
    std::optional<std::size_t> boundary;

    std::optional<Index> boundary_point() const {
        if (!boundary) return std::nullopt;
        return order[*boundary].point;
    }
};

/// Per-point cluster id (the root's user label) or kUnclustered.
struct ClusterAssignment {
    std::vector<ClassId> assign;

    std::size_t size() const { return assign.size(); }
    bool clustered(Index i) const { return assign[i] != kUnclustered; }
    std::size_t unclustered_count() const;
};

/// Prim's algorithm over the complete reachability graph, starting at `root`
/// and always extracting the minimum key (ties: smallest index). With
/// `terminate` the run stops right after inserting the boundary point;
/// otherwise every point is inserted.
ExpansionRecord prim_expand(const NeighborhoodIndex& idx, Index root, const LabelSet& labels,
                            bool terminate);

/// Points inserted strictly before the earliest maximum-key position within
/// (root, boundary]. Without a boundary the whole insertion order is returned.
std::vector<Index> back_trace(const ExpansionRecord& rec);

/// Cluster assignment from per-root records. A point claimed by roots of
/// different labels goes to the root with the smallest prefix_max there,
/// ties by smaller root index.
ClusterAssignment assign_clusters(const std::vector<ExpansionRecord>& records, const LabelSet& labels,
                                  std::size_t n);

/// Runs one expansion per labeled normal root, ascending root index.
std::vector<ExpansionRecord> expand_all(const NeighborhoodIndex& idx, const LabelSet& labels,
                                        bool terminate, unsigned threads = 1);

/// Semi-supervised DBSCAN with terminating expansions and back-tracing.
ClusterAssignment ssdbscan(const NeighborhoodIndex& idx, const LabelSet& labels, unsigned threads = 1);

/// Minimum over records of prefix_max: the bottleneck value to the most
/// density-reachable labeled normal point.
std::vector<double> emax_over_roots(const std::vector<ExpansionRecord>& records);

}  // namespace ssdbcodi

#endif  // SSDBCODI_EXPANSION_HPP
