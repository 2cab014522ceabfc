#include "ssdbcodi/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ssdbcodi/metrics.hpp"
#include "ssdbcodi/parallel.hpp"
#include "ssdbcodi/random.hpp"

namespace ssdbcodi {

void PipelineParams::validate() const {
    score.validate();
    if (knn_k < 1) throw std::invalid_argument("knn_k must be positive");
}

PreparedRun prepare(const Dataset& ds, const NeighborhoodIndex& idx, const LabelSet& labels, unsigned threads) {
    if (idx.size() != ds.size()) throw std::invalid_argument("index and dataset sizes differ");
    if (labels.normal.empty()) throw std::invalid_argument("the pipeline needs at least one labeled normal point");
    labels.validate(ds.size());

    PreparedRun prep;
    prep.labels = labels;
    const auto records = expand_all(idx, labels, /*terminate=*/false, threads);
    prep.assignment = assign_clusters(records, labels, ds.size());
    prep.emax = emax_over_roots(records);
    prep.components = component_scores(ds, idx, labels, prep.emax, threads);
    return prep;
}

PipelineResult finish(const Dataset& ds, const PreparedRun& prep, const PipelineParams& params) {
    params.validate();
    PipelineResult res;
    res.assignment = prep.assignment;
    res.emax = prep.emax;
    res.scores = prep.components;
    res.scores.t_score = t_score(res.scores, params.score);

    const std::size_t unclustered = res.assignment.unclustered_count();
    res.k_reliable = params.k_reliable ? *params.k_reliable
                                       : default_reliable_count(ds.size(), prep.labels, unclustered);
    res.training = select_reliable(res.assignment, res.scores, res.k_reliable);
    res.knn_k = std::min(params.knn_k, res.training.size());

    const auto model = train(res.training, ds.points, res.knn_k);
    auto pred = predict(model, ds.points, params.threads);
    res.clusters = std::move(pred.clusters);
    res.outliers = std::move(pred.outliers);
    res.outlier_score = std::move(pred.outlier_score);
    return res;
}

PipelineResult run(const Dataset& ds, const NeighborhoodIndex& idx, const LabelSet& labels,
                   const PipelineParams& params) {
    params.validate();
    if (idx.min_pts() != params.score.min_pts) throw std::invalid_argument("index min_pts differs from params");
    return finish(ds, prepare(ds, idx, labels, params.threads), params);
}

PipelineResult run(const Dataset& ds, const LabelSet& labels, const PipelineParams& params) {
    params.validate();
    const auto idx = build_index(ds, params.score.min_pts, params.threads);
    return run(ds, idx, labels, params);
}

std::vector<std::pair<double, double>> weight_lattice(double step) {
    if (!(step > 0.0 && step <= 1.0)) throw std::invalid_argument("grid step must lie in (0, 1]");
    const double inv = 1.0 / step;
    const bool even = std::abs(inv - std::round(inv)) < 1e-9;
    const auto m = static_cast<int>(even ? std::round(inv) : std::floor(inv + 1e-9));
    auto value = [&](int i) { return even ? static_cast<double>(i) / m : i * step; };
    std::vector<std::pair<double, double>> cells;
    for (int i = 0; i <= m; ++i)
        for (int j = 0; i + j <= m; ++j) cells.emplace_back(value(i), value(j));
    return cells;
}

std::vector<std::vector<Index>> label_folds(const LabelSet& labels, std::size_t folds, std::uint64_t seed) {
    if (folds < 2) throw std::invalid_argument("cross-validation needs at least 2 folds");
    if (labels.normal.size() < folds)
        throw std::invalid_argument("too few labeled normal points for the fold count");
    Rng rng(seed);
    auto shuffled = [&](std::vector<Index> v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_below(rng, i)]);
        return v;
    };
    std::vector<Index> normals;
    for (const auto& [i, c] : labels.normal) normals.push_back(i);
    std::vector<Index> outliers(labels.outliers.begin(), labels.outliers.end());

    std::vector<std::vector<Index>> out(folds);
    std::size_t slot = 0;
    for (Index i : shuffled(normals)) out[slot++ % folds].push_back(i);
    for (Index i : shuffled(outliers)) out[slot++ % folds].push_back(i);
    for (auto& f : out) std::sort(f.begin(), f.end());
    return out;
}

double validation_objective(const PipelineResult& result, const LabelSet& hidden) {
    const auto points = hidden.labeled();
    if (points.empty()) throw std::invalid_argument("validation fold is empty");
    std::vector<ClassId> predicted, truth;
    std::vector<double> scores;
    std::vector<bool> positive;
    for (Index i : points) {
        predicted.push_back(result.clusters.at(i));
        truth.push_back(*hidden.label_of(i));
        scores.push_back(result.outlier_score.at(i));
        positive.push_back(truth.back() == kOutlier);
    }
    // A single hidden point has no pairs; agreement with its label stands in.
    const double ri = points.size() >= 2 ? rand_index(predicted, truth) : (predicted[0] == truth[0] ? 1.0 : 0.0);
    const bool both = std::find(positive.begin(), positive.end(), true) != positive.end() &&
                      std::find(positive.begin(), positive.end(), false) != positive.end();
    if (!both) return ri;
    return 0.5 * (auc(scores, positive) + ri);
}

TuneReport tune(const Dataset& ds, const NeighborhoodIndex& idx, const LabelSet& labels,
                const PipelineParams& base, const TuneOptions& options) {
    base.validate();
    const auto cells = weight_lattice(options.grid_step);
    const auto folds = label_folds(labels, options.folds, options.seed);

    std::vector<LabelSet> hidden(folds.size()), visible(folds.size());
    for (std::size_t f = 0; f < folds.size(); ++f) {
        visible[f] = labels;
        for (Index i : folds[f]) {
            if (auto it = visible[f].normal.find(i); it != visible[f].normal.end()) {
                hidden[f].normal.insert(*it);
                visible[f].normal.erase(it);
            } else {
                visible[f].outliers.erase(i);
                hidden[f].outliers.insert(i);
            }
        }
    }

    std::vector<PreparedRun> prepared(folds.size());
    parallel_for(folds.size(), base.threads,
                 [&](std::size_t f) { prepared[f] = prepare(ds, idx, visible[f], 1); });

    std::vector<double> objective(cells.size() * folds.size());
    parallel_for(objective.size(), base.threads, [&](std::size_t job) {
        const std::size_t c = job / folds.size(), f = job % folds.size();
        PipelineParams params = base;
        params.threads = 1;
        params.score.alpha = cells[c].first;
        params.score.beta = cells[c].second;
        if (params.k_reliable)
            params.k_reliable = std::min(*params.k_reliable, prepared[f].assignment.unclustered_count());
        objective[job] = validation_objective(finish(ds, prepared[f], params), hidden[f]);
    });

    TuneReport report;
    bool first = true;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        double sum = 0.0;
        for (std::size_t f = 0; f < folds.size(); ++f) sum += objective[c * folds.size() + f];
        const double mean = sum / static_cast<double>(folds.size());
        report.grid.push_back({cells[c].first, cells[c].second, mean});
        // Cells are ascending, so a strict improvement keeps the smallest pair on ties.
        if (first || mean > report.best_objective) {
            report.best_alpha = cells[c].first;
            report.best_beta = cells[c].second;
            report.best_objective = mean;
            first = false;
        }
    }
    return report;
}

TuneReport tune(const Dataset& ds, const LabelSet& labels, const PipelineParams& base,
                const TuneOptions& options) {
    base.validate();
    const auto idx = build_index(ds, base.score.min_pts, base.threads);
    return tune(ds, idx, labels, base, options);
}

}  // namespace ssdbcodi
