#include "ssdbcodi/metricspace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "ssdbcodi/parallel.hpp"

namespace ssdbcodi {

double euclidean(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

NeighborhoodIndex::NeighborhoodIndex(const Matrix& points, std::size_t min_pts, unsigned threads)
    : n_(points.rows()), min_pts_(min_pts) {
    if (n_ < 2) throw std::invalid_argument("neighborhood index needs at least 2 points");
    if (min_pts < 1 || min_pts > n_ - 1)
        throw std::invalid_argument("min_pts must lie in [1, n-1]");

    dist_.assign(n_ * n_, 0.0);
    // Upper triangle per row, mirrored afterwards so dist(p,q) == dist(q,p) bitwise.
    parallel_for(n_, threads, [&](std::size_t p) {
        for (std::size_t q = p + 1; q < n_; ++q) dist_[p * n_ + q] = euclidean(points.row(p), points.row(q));
    });
    for (std::size_t p = 0; p < n_; ++p)
        for (std::size_t q = p + 1; q < n_; ++q) dist_[q * n_ + p] = dist_[p * n_ + q];

    core_.assign(n_, 0.0);
    parallel_for(n_, threads, [&](std::size_t p) {
        std::vector<double> others;
        others.reserve(n_ - 1);
        for (std::size_t q = 0; q < n_; ++q)
            if (q != p) others.push_back(dist_[p * n_ + q]);
        auto kth = others.begin() + static_cast<std::ptrdiff_t>(min_pts_ - 1);
        std::nth_element(others.begin(), kth, others.end());
        core_[p] = *kth;
    });
}

void NeighborhoodIndex::check(Index p) const {
    if (p >= n_) throw std::out_of_range("point index out of range");
}

double NeighborhoodIndex::reach_distance(Index p, Index q) const {
    check(p);
    check(q);
    return reach(p, q);
}

std::vector<Index> NeighborhoodIndex::knn_by_rdist(Index q, std::size_t m) const {
    check(q);
    if (m < 1 || m > n_ - 1) throw std::invalid_argument("neighbor count must lie in [1, n-1]");
    std::vector<Index> others;
    others.reserve(n_ - 1);
    for (Index i = 0; i < n_; ++i)
        if (i != q) others.push_back(i);
    auto closer = [&](Index a, Index b) {
        const double ra = reach(q, a), rb = reach(q, b);
        return ra < rb || (ra == rb && a < b);
    };
    std::partial_sort(others.begin(), others.begin() + static_cast<std::ptrdiff_t>(m), others.end(), closer);
    others.resize(m);
    return others;
}

bool NeighborhoodIndex::is_density_reachable(Index p, Index q, double epsilon) const {
    check(p);
    check(q);
    if (epsilon < 0.0) throw std::invalid_argument("epsilon must be non-negative");
    if (core_[p] > epsilon || core_[q] > epsilon) return false;
    if (p == q) return true;
    std::vector<bool> seen(n_, false);
    std::queue<Index> frontier;
    frontier.push(p);
    seen[p] = true;
    while (!frontier.empty()) {
        const Index u = frontier.front();
        frontier.pop();
        for (Index v = 0; v < n_; ++v) {
            if (seen[v] || core_[v] > epsilon || dist_[u * n_ + v] > epsilon) continue;
            if (v == q) return true;
            seen[v] = true;
            frontier.push(v);
        }
    }
    return false;
}

NeighborhoodIndex build_index(const Dataset& ds, std::size_t min_pts, unsigned threads) {
    return NeighborhoodIndex(ds.points, min_pts, threads);
}

}  // namespace ssdbcodi
