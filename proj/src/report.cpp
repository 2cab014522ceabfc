#include "ssdbcodi/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <stdexcept>

#include "ssdbcodi/baselines.hpp"
#include "ssdbcodi/expansion.hpp"
#include "ssdbcodi/metrics.hpp"
#include "ssdbcodi/parallel.hpp"

namespace ssdbcodi {

namespace {

std::string fmt12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt12(*v) : std::string(); }

nlohmann::ordered_json opt_json(const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(round12(*v)) : nlohmann::ordered_json(nullptr);
}

std::vector<bool> truth_outliers(const Dataset& ds) {
    std::vector<bool> out(ds.size());
    for (Index i = 0; i < ds.size(); ++i) out[i] = ds.truth[i] == kOutlier;
    return out;
}

bool has_both_classes(const std::vector<bool>& v) {
    return std::find(v.begin(), v.end(), true) != v.end() && std::find(v.begin(), v.end(), false) != v.end();
}

struct Moments {
    double sum = 0.0, sum_sq = 0.0;
    std::size_t count = 0;
    void add(double v) {
        sum += v;
        sum_sq += v * v;
        ++count;
    }
    double mean() const { return sum / static_cast<double>(count); }
    double stddev() const {
        if (count < 2) return 0.0;
        return std::sqrt(std::max(0.0, sum_sq / static_cast<double>(count) - mean() * mean()));
    }
};

}  // namespace

double round12(double v) {
    if (!std::isfinite(v)) return v;
    return std::strtod(fmt12(v).c_str(), nullptr);
}

TrialReport run_trial(const Dataset& ds, const NeighborhoodIndex& idx, const TrialConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    const auto labels = sample_labels(ds, config.label_fraction, config.seed, config.stratified);

    PipelineParams params = config.params;
    if (config.tune) {
        TuneOptions options = config.tune_options;
        options.seed = config.seed;
        const auto tuned = tune(ds, idx, labels, params, options);
        params.score.alpha = tuned.best_alpha;
        params.score.beta = tuned.best_beta;
    }
    auto result = run(ds, idx, labels, params);

    TrialReport report;
    report.dataset = ds.name;
    report.n = ds.size();
    report.d = ds.dims();
    report.label_fraction = config.label_fraction;
    report.seed = config.seed;
    report.alpha = params.score.alpha;
    report.beta = params.score.beta;
    report.min_pts = params.score.min_pts;
    report.k_reliable = result.k_reliable;
    report.knn_k = result.knn_k;
    report.tuned = config.tune;

    const auto positive = truth_outliers(ds);
    if (has_both_classes(positive)) report.auc = auc(result.outlier_score, positive);
    report.rand_index = ds.size() >= 2 ? rand_index(result.clusters, ds.truth) : 1.0;
    report.nmi = nmi(result.clusters, ds.truth);
    if (config.per_point) report.result = std::move(result);
    if (config.timing)
        report.wall_time_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

TrialReport run_trial(const Dataset& ds, const TrialConfig& config) {
    const auto idx = build_index(ds, config.params.score.min_pts, config.params.threads);
    return run_trial(ds, idx, config);
}

nlohmann::ordered_json to_json(const TrialReport& r) {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["dataset"] = r.dataset;
    j["n"] = r.n;
    j["d"] = r.d;
    j["label_fraction"] = round12(r.label_fraction);
    j["seed"] = r.seed;
    j["params"] = {{"alpha", round12(r.alpha)},
                   {"beta", round12(r.beta)},
                   {"min_pts", r.min_pts},
                   {"k_reliable", r.k_reliable},
                   {"knn_k", r.knn_k},
                   {"tuned", r.tuned}};
    j["auc"] = opt_json(r.auc);
    j["rand_index"] = round12(r.rand_index);
    j["nmi"] = round12(r.nmi);
    if (r.wall_time_ms) j["wall_time_ms"] = round12(*r.wall_time_ms);
    if (r.result) {
        const auto& res = *r.result;
        auto rounded = [](const std::vector<double>& v) {
            std::vector<double> out(v.size());
            std::transform(v.begin(), v.end(), out.begin(), round12);
            return out;
        };
        auto& pp = j["points"];
        pp["cluster"] = res.clusters;
        pp["outlier"] = res.outliers;
        pp["outlier_score"] = rounded(res.outlier_score);
        pp["r_score"] = rounded(res.scores.r_score);
        pp["l_score"] = rounded(res.scores.l_score);
        pp["sim_score"] = rounded(res.scores.sim_score);
        pp["t_score"] = rounded(res.scores.t_score);
        pp["reliable_cluster"] = res.assignment.assign;
    }
    return j;
}

std::vector<BenchmarkRow> benchmark(const Dataset& ds, const TrialConfig& base, const std::vector<double>& fractions,
                                    std::size_t trials, std::uint64_t base_seed, unsigned threads) {
    if (trials < 1) throw std::invalid_argument("benchmark needs at least one trial");
    const auto idx = build_index(ds, base.params.score.min_pts, threads);
    std::vector<TrialReport> reports(fractions.size() * trials);
    parallel_for(reports.size(), threads, [&](std::size_t job) {
        TrialConfig config = base;
        config.label_fraction = fractions[job / trials];
        config.seed = base_seed + job % trials;
        config.params.threads = 1;
        config.timing = false;
        config.per_point = false;
        reports[job] = run_trial(ds, idx, config);
    });

    std::vector<BenchmarkRow> rows;
    for (std::size_t f = 0; f < fractions.size(); ++f) {
        Moments a, r, m;
        for (std::size_t t = 0; t < trials; ++t) {
            const auto& rep = reports[f * trials + t];
            if (rep.auc) a.add(*rep.auc);
            r.add(rep.rand_index);
            m.add(rep.nmi);
        }
        BenchmarkRow row{fractions[f], std::nullopt, std::nullopt, r.mean(), r.stddev(), m.mean(), m.stddev()};
        if (a.count > 0) {
            row.auc_mean = a.mean();
            row.auc_std = a.stddev();
        }
        rows.push_back(row);
    }
    return rows;
}

void write_benchmark_csv(std::ostream& out, const std::vector<BenchmarkRow>& rows) {
    out << "# schema_version=" << kSchemaVersion << '\n';
    out << "fraction,auc_mean,auc_std,rand_mean,rand_std,nmi_mean,nmi_std\n";
    for (const auto& row : rows) {
        out << fmt12(row.fraction) << ',' << fmt_opt(row.auc_mean) << ',' << fmt_opt(row.auc_std) << ','
            << fmt12(row.rand_mean) << ',' << fmt12(row.rand_std) << ',' << fmt12(row.nmi_mean) << ','
            << fmt12(row.nmi_std) << '\n';
    }
}

std::vector<SensitivityRow> sensitivity(const Dataset& ds, const TrialConfig& base,
                                        const std::vector<double>& fractions, double grid_step,
                                        std::size_t trials, std::uint64_t base_seed, unsigned threads) {
    if (trials < 1) throw std::invalid_argument("sensitivity needs at least one trial");
    if (!(grid_step > 0.0) || std::abs(1.0 / grid_step - std::round(1.0 / grid_step)) > 1e-9)
        throw std::invalid_argument("grid step must divide 1 evenly");
    const auto cells = weight_lattice(grid_step);
    const auto idx = build_index(ds, base.params.score.min_pts, threads);

    // Expansions depend only on the labels, so each (fraction, trial) is
    // prepared once and finished for every cell.
    const std::size_t jobs = fractions.size() * trials;
    std::vector<LabelSet> labels(jobs);
    std::vector<PreparedRun> prepared(jobs);
    parallel_for(jobs, threads, [&](std::size_t job) {
        labels[job] = sample_labels(ds, fractions[job / trials], base_seed + job % trials, base.stratified);
        prepared[job] = prepare(ds, idx, labels[job], 1);
    });

    const auto positive = truth_outliers(ds);
    const bool with_auc = has_both_classes(positive);
    struct Metrics {
        double auc = 0.0, rand = 0.0, nmi = 0.0;
    };
    std::vector<Metrics> metrics(jobs * cells.size());
    parallel_for(metrics.size(), threads, [&](std::size_t k) {
        const std::size_t job = k / cells.size(), c = k % cells.size();
        PipelineParams params = base.params;
        params.threads = 1;
        params.score.alpha = cells[c].first;
        params.score.beta = cells[c].second;
        const auto res = finish(ds, prepared[job], params);
        metrics[k] = {with_auc ? auc(res.outlier_score, positive) : 0.0, rand_index(res.clusters, ds.truth),
                      nmi(res.clusters, ds.truth)};
    });

    std::vector<SensitivityRow> rows;
    for (std::size_t f = 0; f < fractions.size(); ++f) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            Moments a, r, m;
            for (std::size_t t = 0; t < trials; ++t) {
                const auto& mt = metrics[(f * trials + t) * cells.size() + c];
                a.add(mt.auc);
                r.add(mt.rand);
                m.add(mt.nmi);
            }
            rows.push_back({cells[c].first, cells[c].second, fractions[f],
                            with_auc ? std::optional<double>(a.mean()) : std::nullopt, r.mean(), m.mean()});
        }
    }
    return rows;
}

void write_sensitivity_csv(std::ostream& out, const std::vector<SensitivityRow>& rows) {
    out << "# schema_version=" << kSchemaVersion << '\n';
    out << "alpha,beta,fraction,auc_mean,rand_mean,nmi_mean\n";
    for (const auto& row : rows) {
        out << fmt12(row.alpha) << ',' << fmt12(row.beta) << ',' << fmt12(row.fraction) << ','
            << fmt_opt(row.auc_mean) << ',' << fmt12(row.rand_mean) << ',' << fmt12(row.nmi_mean) << '\n';
    }
}

BaselineReport run_baseline(const Dataset& ds, const BaselineConfig& config) {
    BaselineReport rep;
    rep.algo = config.algo;
    rep.dataset = ds.name;
    rep.n = ds.size();
    rep.config = config;
    const auto positive = truth_outliers(ds);
    auto score_clusters = [&](const std::vector<ClassId>& assign) {
        rep.assignment = assign;
        rep.rand_index = rand_index(assign, ds.truth);
        rep.nmi = nmi(assign, ds.truth);
    };

    if (config.algo == "dbscan") {
        const auto idx = build_index(ds, 1);
        auto assign = dbscan(idx, config.epsilon, config.min_pts);
        std::vector<double> noise(assign.size());
        for (std::size_t i = 0; i < assign.size(); ++i) {
            if (assign[i] == kNoise) {
                assign[i] = kOutlier;  // noise aligns with the truth's outlier id
                noise[i] = 1.0;
            }
        }
        score_clusters(assign);
        if (has_both_classes(positive)) rep.auc = auc(noise, positive);
    } else if (config.algo == "kmeans") {
        rep.config.k = config.k.value_or(std::max<std::size_t>(1, ds.num_clusters()));
        score_clusters(kmeans(ds, *rep.config.k, config.seed, config.max_iter).assign);
    } else if (config.algo == "lof") {
        rep.config.k = config.k.value_or(10);
        const auto idx = build_index(ds, 1);
        rep.scores = lof(idx, *rep.config.k);
        if (!has_both_classes(positive)) throw std::invalid_argument("lof AUC needs both outliers and normals");
        rep.auc = auc(rep.scores, positive);
    } else if (config.algo == "ssdbscan") {
        const auto idx = build_index(ds, config.min_pts);
        const auto labels = sample_labels(ds, config.label_fraction, config.seed, config.stratified);
        const auto assignment = ssdbscan(idx, labels);
        score_clusters(assign_unclustered_to_nearest(idx, assignment.assign));
    } else {
        throw std::invalid_argument("unknown baseline algorithm '" + config.algo +
                                    "' (expected dbscan, kmeans, lof or ssdbscan)");
    }
    return rep;
}

nlohmann::ordered_json to_json(const BaselineReport& r) {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["algo"] = r.algo;
    j["dataset"] = r.dataset;
    j["n"] = r.n;
    auto& p = j["params"];
    if (r.algo == "dbscan") {
        p["epsilon"] = round12(r.config.epsilon);
        p["min_pts"] = r.config.min_pts;
    } else if (r.algo == "kmeans") {
        p["k"] = *r.config.k;
        p["seed"] = r.config.seed;
        p["max_iter"] = r.config.max_iter;
    } else if (r.algo == "lof") {
        p["k"] = *r.config.k;
    } else {
        p["min_pts"] = r.config.min_pts;
        p["label_fraction"] = round12(r.config.label_fraction);
        p["seed"] = r.config.seed;
    }
    if (r.auc) j["auc"] = round12(*r.auc);
    if (r.rand_index) j["rand_index"] = round12(*r.rand_index);
    if (r.nmi) j["nmi"] = round12(*r.nmi);
    return j;
}

nlohmann::ordered_json describe(const Dataset& ds) {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["dataset"] = ds.name;
    j["instances"] = ds.size();
    j["attributes"] = ds.dims();
    j["outliers"] = ds.num_outliers();
    j["clusters"] = ds.num_clusters();
    return j;
}

}  // namespace ssdbcodi
