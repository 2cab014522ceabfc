#include "ssdbcodi/scoring.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ssdbcodi/parallel.hpp"

namespace ssdbcodi {

namespace {

std::vector<double> exp_neg(std::span<const double> values, const char* what) {
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] >= 0.0)) throw std::invalid_argument(std::string(what) + " must be non-negative");
        out[i] = std::exp(-values[i]);
    }
    return out;
}

}  // namespace

void ScoreParams::validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0,1]");
    if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("beta must lie in [0,1]");
    // Tolerates lattice values such as 0.7 + 0.3 that overshoot 1 by rounding.
    if (alpha + beta > 1.0 + 1e-12) throw std::invalid_argument("alpha + beta must not exceed 1");
    if (min_pts < 1) throw std::invalid_argument("min_pts must be positive");
}

std::vector<double> r_score(std::span<const double> emax) { return exp_neg(emax, "emax"); }

std::vector<double> l_score(std::span<const double> ld) { return exp_neg(ld, "local density"); }

double local_density(const NeighborhoodIndex& idx, Index q) {
    const auto neighbors = idx.knn_by_rdist(q, idx.min_pts());
    double sum = 0.0;
    for (Index nb : neighbors) sum += idx.reach(nb, q);
    return sum / static_cast<double>(neighbors.size());
}

std::vector<double> local_densities(const NeighborhoodIndex& idx, unsigned threads) {
    std::vector<double> out(idx.size());
    parallel_for(idx.size(), threads, [&](std::size_t q) { out[q] = local_density(idx, q); });
    return out;
}

double sim_score(const Dataset& ds, const LabelSet& labels, Index q) {
    if (q >= ds.size()) throw std::out_of_range("sim_score: index out of range");
    if (labels.outliers.empty()) return 0.0;
    double nearest = std::numeric_limits<double>::infinity();
    for (Index o : labels.outliers) nearest = std::min(nearest, euclidean(ds.points.row(q), ds.points.row(o)));
    return std::exp(-nearest);
}

std::vector<double> sim_scores(const Dataset& ds, const LabelSet& labels) {
    std::vector<double> out(ds.size());
    for (Index q = 0; q < ds.size(); ++q) out[q] = sim_score(ds, labels, q);
    return out;
}

std::vector<double> t_score(const ScoreTable& st, const ScoreParams& params) {
    params.validate();
    const std::size_t n = st.r_score.size();
    if (st.l_score.size() != n || st.sim_score.size() != n)
        throw std::invalid_argument("t_score: component score lengths differ");
    const double gamma = std::max(0.0, 1.0 - params.alpha - params.beta);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = params.alpha * (1.0 - st.r_score[i]) + params.beta * (1.0 - st.l_score[i]) +
                         gamma * st.sim_score[i];
        out[i] = std::clamp(t, 0.0, 1.0);
    }
    return out;
}

ScoreTable component_scores(const Dataset& ds, const NeighborhoodIndex& idx, const LabelSet& labels,
                            std::span<const double> emax, unsigned threads) {
    if (emax.size() != ds.size() || idx.size() != ds.size())
        throw std::invalid_argument("component_scores: size mismatch");
    ScoreTable st;
    st.r_score = r_score(emax);
    const auto ld = local_densities(idx, threads);
    st.l_score = l_score(ld);
    st.sim_score = sim_scores(ds, labels);
    return st;
}

}  // namespace ssdbcodi
