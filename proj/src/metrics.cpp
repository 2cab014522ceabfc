#include "ssdbcodi/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace ssdbcodi {

namespace {

struct Contingency {
    std::map<std::pair<ClassId, ClassId>, double> joint;
    std::map<ClassId, double> rows;
    std::map<ClassId, double> cols;
    double n = 0.0;
};

Contingency tabulate(std::span<const ClassId> predicted, std::span<const ClassId> truth) {
    if (predicted.size() != truth.size()) throw std::invalid_argument("partition lengths differ");
    Contingency c;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        c.joint[{predicted[i], truth[i]}] += 1.0;
        c.rows[predicted[i]] += 1.0;
        c.cols[truth[i]] += 1.0;
    }
    c.n = static_cast<double>(predicted.size());
    return c;
}

double pairs(double m) { return m * (m - 1.0) / 2.0; }

double entropy(const std::map<ClassId, double>& marginal, double n) {
    double h = 0.0;
    for (const auto& [id, m] : marginal) h -= (m / n) * std::log(m / n);
    return h;
}

}  // namespace

double auc(std::span<const double> scores, const std::vector<bool>& positive) {
    if (scores.size() != positive.size()) throw std::invalid_argument("auc: length mismatch");
    const std::size_t n = scores.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Mann-Whitney U from mid-ranks.
    double rank_sum = 0.0;
    double n_pos = 0.0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        const double mid_rank = (static_cast<double>(i) + static_cast<double>(j) + 1.0) / 2.0;
        for (std::size_t k = i; k < j; ++k) {
            if (positive[order[k]]) {
                rank_sum += mid_rank;
                n_pos += 1.0;
            }
        }
        i = j;
    }
    const double n_neg = static_cast<double>(n) - n_pos;
    if (n_pos == 0.0 || n_neg == 0.0) throw std::invalid_argument("auc needs both positive and negative labels");
    return (rank_sum - n_pos * (n_pos + 1.0) / 2.0) / (n_pos * n_neg);
}

double rand_index(std::span<const ClassId> predicted, std::span<const ClassId> truth) {
    const auto c = tabulate(predicted, truth);
    if (c.n < 2.0) throw std::invalid_argument("rand_index needs at least two points");
    double same_both = 0.0, same_pred = 0.0, same_truth = 0.0;
    for (const auto& [key, m] : c.joint) same_both += pairs(m);
    for (const auto& [id, m] : c.rows) same_pred += pairs(m);
    for (const auto& [id, m] : c.cols) same_truth += pairs(m);
    const double total = pairs(c.n);
    const double apart_both = total - same_pred - same_truth + same_both;
    return (same_both + apart_both) / total;
}

double nmi(std::span<const ClassId> predicted, std::span<const ClassId> truth) {
    const auto c = tabulate(predicted, truth);
    if (c.n < 1.0) throw std::invalid_argument("nmi needs at least one point");
    const double h_pred = entropy(c.rows, c.n);
    const double h_truth = entropy(c.cols, c.n);
    if (h_pred + h_truth == 0.0) return 1.0;
    double mi = 0.0;
    for (const auto& [key, m] : c.joint) {
        const double pj = m / c.n;
        mi += pj * std::log(m * c.n / (c.rows.at(key.first) * c.cols.at(key.second)));
    }
    return std::clamp(2.0 * mi / (h_pred + h_truth), 0.0, 1.0);
}

}  // namespace ssdbcodi
