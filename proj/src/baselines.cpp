#include "ssdbcodi/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "ssdbcodi/random.hpp"

namespace ssdbcodi {

std::vector<ClassId> dbscan(const NeighborhoodIndex& idx, double epsilon, std::size_t min_pts) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("dbscan epsilon must be positive");
    if (min_pts < 1) throw std::invalid_argument("dbscan min_pts must be positive");
    const std::size_t n = idx.size();
    std::vector<bool> core(n, false);
    for (Index p = 0; p < n; ++p) {
        std::size_t within = 0;
        for (Index q = 0; q < n; ++q)
            if (q != p && idx.dist(p, q) <= epsilon) ++within;
        core[p] = within >= min_pts;
    }

    std::vector<ClassId> label(n, kNoise);
    ClassId next = 0;
    for (Index seed = 0; seed < n; ++seed) {
        if (!core[seed] || label[seed] != kNoise) continue;
        std::queue<Index> frontier;
        frontier.push(seed);
        label[seed] = next;
        while (!frontier.empty()) {
            const Index u = frontier.front();
            frontier.pop();
            for (Index v = 0; v < n; ++v) {
                if (core[v] && label[v] == kNoise && idx.dist(u, v) <= epsilon) {
                    label[v] = next;
                    frontier.push(v);
                }
            }
        }
        ++next;
    }
    for (Index p = 0; p < n; ++p) {
        if (core[p]) continue;
        for (Index q = 0; q < n; ++q) {
            if (q != p && core[q] && idx.dist(p, q) <= epsilon) {
                label[p] = label[q];
                break;
            }
        }
    }
    return label;
}

namespace {

double squared(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return s;
}

Matrix plus_plus_seeds(const Matrix& x, std::size_t k, Rng& rng) {
    const std::size_t n = x.rows();
    Matrix centroids(k, x.cols());
    std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
    Index pick = uniform_below(rng, n);
    for (std::size_t c = 0; c < k; ++c) {
        std::copy_n(x.row(pick).begin(), x.cols(), centroids.row(c).begin());
        double total = 0.0;
        for (Index i = 0; i < n; ++i) {
            nearest[i] = std::min(nearest[i], squared(x.row(i), centroids.row(c)));
            total += nearest[i];
        }
        if (c + 1 == k) break;
        if (total <= 0.0) {
            pick = uniform_below(rng, n);
            continue;
        }
        double target = uniform_unit(rng) * total;
        for (Index i = 0; i < n; ++i) {
            if (nearest[i] <= 0.0) continue;
            pick = i;  // last positive-weight point if rounding exhausts target
            target -= nearest[i];
            if (target < 0.0) break;
        }
    }
    return centroids;
}

}  // namespace

KMeansResult kmeans(const Dataset& ds, std::size_t k, std::uint64_t seed, std::size_t max_iter) {
    const std::size_t n = ds.size();
    if (k < 1 || k > n) throw std::invalid_argument("kmeans k must lie in [1, n]");
    if (max_iter < 1) throw std::invalid_argument("kmeans max_iter must be positive");
    const Matrix& x = ds.points;
    Rng rng(seed);

    KMeansResult res;
    res.centroids = plus_plus_seeds(x, k, rng);
    res.assign.assign(n, -1);
    for (;;) {
        bool changed = false;
        double objective = 0.0;
        for (Index i = 0; i < n; ++i) {
            ClassId best = 0;
            double best_d = squared(x.row(i), res.centroids.row(0));
            for (std::size_t c = 1; c < k; ++c) {
                const double d = squared(x.row(i), res.centroids.row(c));
                if (d < best_d) {
                    best_d = d;
                    best = static_cast<ClassId>(c);
                }
            }
            if (res.assign[i] != best) changed = true;
            res.assign[i] = best;
            objective += best_d;
        }
        res.objective.push_back(objective);
        if (!changed || res.iterations == max_iter) break;

        Matrix sums(k, x.cols());
        std::vector<std::size_t> counts(k, 0);
        for (Index i = 0; i < n; ++i) {
            const auto c = static_cast<std::size_t>(res.assign[i]);
            ++counts[c];
            for (std::size_t j = 0; j < x.cols(); ++j) sums(c, j) += x(i, j);
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] == 0) continue;
            for (std::size_t j = 0; j < x.cols(); ++j)
                res.centroids(c, j) = sums(c, j) / static_cast<double>(counts[c]);
        }
        ++res.iterations;
    }
    return res;
}

std::vector<double> lof(const NeighborhoodIndex& idx, std::size_t k) {
    const std::size_t n = idx.size();
    if (k < 1 || k > n - 1) throw std::invalid_argument("lof k must lie in [1, n-1]");

    std::vector<double> kdist(n);
    std::vector<std::vector<Index>> neighbors(n);
    for (Index p = 0; p < n; ++p) {
        std::vector<double> others;
        others.reserve(n - 1);
        for (Index q = 0; q < n; ++q)
            if (q != p) others.push_back(idx.dist(p, q));
        std::nth_element(others.begin(), others.begin() + static_cast<std::ptrdiff_t>(k - 1), others.end());
        kdist[p] = others[k - 1];
        for (Index q = 0; q < n; ++q)
            if (q != p && idx.dist(p, q) <= kdist[p]) neighbors[p].push_back(q);
    }

    // Small offset keeps duplicate-heavy neighborhoods finite.
    constexpr double kFloor = 1e-10;
    std::vector<double> lrd(n);
    for (Index p = 0; p < n; ++p) {
        double sum = 0.0;
        for (Index o : neighbors[p]) sum += std::max(kdist[o], idx.dist(p, o));
        lrd[p] = 1.0 / (sum / static_cast<double>(neighbors[p].size()) + kFloor);
    }
    std::vector<double> score(n);
    for (Index p = 0; p < n; ++p) {
        double sum = 0.0;
        for (Index o : neighbors[p]) sum += lrd[o];
        score[p] = sum / static_cast<double>(neighbors[p].size()) / lrd[p];
    }
    return score;
}

std::vector<ClassId> assign_unclustered_to_nearest(const NeighborhoodIndex& idx,
                                                   const std::vector<ClassId>& assignment) {
    if (assignment.size() != idx.size()) throw std::invalid_argument("assignment size mismatch");
    std::vector<ClassId> out = assignment;
    for (Index p = 0; p < idx.size(); ++p) {
        if (assignment[p] != kUnclustered) continue;
        double best = std::numeric_limits<double>::infinity();
        for (Index q = 0; q < idx.size(); ++q) {
            if (assignment[q] == kUnclustered) continue;
            if (idx.dist(p, q) < best) {
                best = idx.dist(p, q);
                out[p] = assignment[q];
            }
        }
    }
    return out;
}

}  // namespace ssdbcodi
