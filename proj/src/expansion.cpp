#include "ssdbcodi/expansion.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "ssdbcodi/parallel.hpp"

namespace ssdbcodi {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::size_t ClusterAssignment::unclustered_count() const {
    return static_cast<std::size_t>(std::count(assign.begin(), assign.end(), kUnclustered));
}

ExpansionRecord prim_expand(const NeighborhoodIndex& idx, Index root, const LabelSet& labels,
                            bool terminate) {
    const std::size_t n = idx.size();
    if (root >= n) throw std::out_of_range("expansion root out of range");
    const auto root_label = labels.normal.find(root);
    if (root_label == labels.normal.end())
        throw std::invalid_argument("expansion root must be a labeled normal point");

    ExpansionRecord rec;
    rec.root = root;
    rec.order.reserve(n);
    rec.prefix_max.assign(n, kInf);

    std::vector<double> key(n, kInf);
    std::vector<bool> inserted(n, false);
    key[root] = 0.0;
    double running_max = 0.0;

    for (std::size_t step = 0; step < n; ++step) {
        Index q = n;
        for (Index i = 0; i < n; ++i)
            if (!inserted[i] && (q == n || key[i] < key[q])) q = i;

        inserted[q] = true;
        running_max = std::max(running_max, key[q]);
        rec.order.push_back({q, key[q]});
        rec.prefix_max[q] = running_max;

        if (!rec.boundary) {
            const auto label = labels.label_of(q);
            if (label && *label != root_label->second) {
                rec.boundary = rec.order.size() - 1;
                if (terminate) break;
            }
        }
        const auto row = idx.dist_row(q);
        const double core_q = idx.core(q);
        for (Index s = 0; s < n; ++s) {
            if (inserted[s]) continue;
            const double r = std::max({core_q, idx.core(s), row[s]});
            if (r < key[s]) key[s] = r;
        }
    }
    return rec;
}

std::vector<Index> back_trace(const ExpansionRecord& rec) {
    std::vector<Index> members;
    std::size_t cut = rec.order.size();
    if (rec.boundary) {
        cut = 1;
        double best = -kInf;
        for (std::size_t pos = 1; pos <= *rec.boundary; ++pos) {
            if (rec.order[pos].key > best) {
                best = rec.order[pos].key;
                cut = pos;
            }
        }
    }
    members.reserve(cut);
    for (std::size_t pos = 0; pos < cut; ++pos) members.push_back(rec.order[pos].point);
    return members;
}

ClusterAssignment assign_clusters(const std::vector<ExpansionRecord>& records, const LabelSet& labels,
                                  std::size_t n) {
    ClusterAssignment out{std::vector<ClassId>(n, kUnclustered)};
    std::vector<double> best_value(n, kInf);
    std::vector<Index> best_root(n, n);
    for (const auto& rec : records) {
        const ClassId label = labels.normal.at(rec.root);
        for (Index p : back_trace(rec)) {
            const double v = rec.prefix_max[p];
            if (v < best_value[p] || (v == best_value[p] && rec.root < best_root[p])) {
                best_value[p] = v;
                best_root[p] = rec.root;
                out.assign[p] = label;
            }
        }
    }
    return out;
}

std::vector<ExpansionRecord> expand_all(const NeighborhoodIndex& idx, const LabelSet& labels,
                                        bool terminate, unsigned threads) {
    std::vector<Index> roots;
    roots.reserve(labels.normal.size());
    for (const auto& [i, c] : labels.normal) {
        if (i >= idx.size()) throw std::out_of_range("labeled index out of range");
        roots.push_back(i);
    }
    std::vector<ExpansionRecord> records(roots.size());
    parallel_for(roots.size(), threads,
                 [&](std::size_t r) { records[r] = prim_expand(idx, roots[r], labels, terminate); });
    return records;
}

ClusterAssignment ssdbscan(const NeighborhoodIndex& idx, const LabelSet& labels, unsigned threads) {
    if (labels.normal.empty()) throw std::invalid_argument("ssdbscan needs at least one labeled normal point");
    labels.validate(idx.size());
    return assign_clusters(expand_all(idx, labels, /*terminate=*/true, threads), labels, idx.size());
}

std::vector<double> emax_over_roots(const std::vector<ExpansionRecord>& records) {
    if (records.empty()) throw std::invalid_argument("emax_over_roots needs at least one record");
    std::vector<double> out(records.front().prefix_max.size(), kInf);
    for (const auto& rec : records) {
        if (rec.order.size() != out.size())
            throw std::invalid_argument("emax_over_roots needs non-terminating expansions");
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::min(out[i], rec.prefix_max[i]);
    }
    return out;
}

}  // namespace ssdbcodi
