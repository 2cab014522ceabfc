#ifndef SSDBCODI_REPORT_HPP
#define SSDBCODI_REPORT_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ssdbcodi/dataset.hpp"
#include "ssdbcodi/metricspace.hpp"
#include "ssdbcodi/pipeline.hpp"

namespace ssdbcodi {

inline constexpr int kSchemaVersion = 1;

/// Rounds to 12 significant digits; the result prints and re-parses exactly.
double round12(double v);

struct TrialConfig {
    double label_fraction = 0.1;
    std::uint64_t seed = 0;
    bool stratified = false;
    PipelineParams params;
    bool tune = false;
    TuneOptions tune_options;  // seed is replaced by the trial seed
    bool per_point = false;
    bool timing = true;
};

/// One seeded pipeline run, evaluated against the full ground truth.
struct TrialReport {
    std::string dataset;
    std::size_t n = 0;
    std::size_t d = 0;
    double label_fraction = 0.0;
    std::uint64_t seed = 0;
    double alpha = 0.0;
    double beta = 0.0;
    std::size_t min_pts = 0;
    std::size_t k_reliable = 0;
    std::size_t knn_k = 0;
    bool tuned = false;
    std::optional<double> auc;  // absent when the truth has a single class
    double rand_index = 0.0;
    double nmi = 0.0;
    std::optional<double> wall_time_ms;
    std::optional<PipelineResult> result;  // kept when per-point output is requested
};

TrialReport run_trial(const Dataset& ds, const NeighborhoodIndex& idx, const TrialConfig& config);
TrialReport run_trial(const Dataset& ds, const TrialConfig& config);

nlohmann::ordered_json to_json(const TrialReport& report);

struct BenchmarkRow {
    double fraction;
    std::optional<double> auc_mean, auc_std;
    double rand_mean, rand_std;
    double nmi_mean, nmi_std;
};

/// For each fraction, runs `trials` trials with seeds base_seed + i and
/// aggregates mean and population standard deviation. Trials run on
/// `threads` workers; rows are ordered by fraction.
std::vector<BenchmarkRow> benchmark(const Dataset& ds, const TrialConfig& base, const std::vector<double>& fractions,
                                    std::size_t trials, std::uint64_t base_seed, unsigned threads);

void write_benchmark_csv(std::ostream& out, const std::vector<BenchmarkRow>& rows);

struct SensitivityRow {
    double alpha;
    double beta;
    double fraction;
    std::optional<double> auc_mean;
    double rand_mean;
    double nmi_mean;
};

/// Mean metrics for every lattice cell (alpha+beta <= 1) and fraction, no
/// tuning. The step must divide 1 evenly. Rows are ordered by (fraction, alpha, beta).
std::vector<SensitivityRow> sensitivity(const Dataset& ds, const TrialConfig& base,
                                        const std::vector<double>& fractions, double grid_step,
                                        std::size_t trials, std::uint64_t base_seed, unsigned threads);

void write_sensitivity_csv(std::ostream& out, const std::vector<SensitivityRow>& rows);

struct BaselineConfig {
    std::string algo;  // dbscan | kmeans | lof | ssdbscan
    double epsilon = 0.5;
    std::optional<std::size_t> k;  // kmeans: default #clusters; lof: default 10
    std::size_t min_pts = 3;
    std::uint64_t seed = 0;
    std::size_t max_iter = 300;
    double label_fraction = 0.1;
    bool stratified = false;
};

struct BaselineReport {
    std::string algo;
    std::string dataset;
    std::size_t n = 0;
    BaselineConfig config;
    std::optional<double> auc;
    std::optional<double> rand_index;
    std::optional<double> nmi;
    std::vector<ClassId> assignment;  // clustering algorithms
    std::vector<double> scores;       // lof
};

/// Throws std::invalid_argument for an unknown algorithm name.
BaselineReport run_baseline(const Dataset& ds, const BaselineConfig& config);

nlohmann::ordered_json to_json(const BaselineReport& report);

/// Dataset characteristics: instances, attributes, outliers, clusters.
nlohmann::ordered_json describe(const Dataset& ds);

}  // namespace ssdbcodi

#endif  // SSDBCODI_REPORT_HPP
