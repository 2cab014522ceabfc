// Command-line front end: run, benchmark, sensitivity, baseline, describe.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ssdbcodi/report.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InputFlags {
    std::string input;
    std::string label_column = "label";
    std::string outlier_sentinel = "o";
    bool scale = false;
    std::string output;
    unsigned threads = 1;
};

struct PipelineFlags {
    double alpha = 1.0 / 3.0;
    double beta = 1.0 / 3.0;
    std::size_t min_pts = 3;
    std::string k_reliable = "AUTO";
    std::size_t knn_k = 5;
    bool tune = false;
    double grid_step = 0.1;
    std::size_t folds = 5;
    bool stratified = false;
    std::uint64_t seed = 0;
    bool no_timing = false;
    bool per_point = false;
};

void add_input_flags(CLI::App* cmd, InputFlags& f) {
    cmd->add_option("--input", f.input, "CSV file with a header row")->required()->check(CLI::ExistingFile);
    cmd->add_option("--label-column", f.label_column, "name of the ground-truth column")->capture_default_str();
    cmd->add_option("--outlier-sentinel", f.outlier_sentinel, "label value marking outliers")->capture_default_str();
    cmd->add_flag("--scale", f.scale, "min-max scale every feature to [0,1]");
    cmd->add_option("--output", f.output, "write the report here instead of stdout");
    cmd->add_option("--threads", f.threads, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
}

void add_pipeline_flags(CLI::App* cmd, PipelineFlags& f) {
    cmd->add_option("--alpha", f.alpha, "weight of the reachability score")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--beta", f.beta, "weight of the local-density score")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--min-pts", f.min_pts, "MinPts for core distances")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--k-reliable", f.k_reliable, "reliable outlier count, or AUTO")->capture_default_str();
    cmd->add_option("--knn-k", f.knn_k, "neighbors of the weighted kNN classifier")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_flag("--tune", f.tune, "cross-validate alpha and beta before the final run");
    cmd->add_option("--grid-step", f.grid_step, "alpha/beta lattice step")->check(CLI::Range(1e-6, 1.0))->capture_default_str();
    cmd->add_option("--folds", f.folds, "cross-validation folds")->check(CLI::Range(2, 1000))->capture_default_str();
    cmd->add_flag("--stratified-labels", f.stratified, "draw at least one label per true cluster");
    cmd->add_option("--seed", f.seed, "random seed")->capture_default_str();
}

ssdbcodi::Dataset load(const InputFlags& f) {
    auto ds = ssdbcodi::load_csv(f.input, {f.label_column, f.outlier_sentinel});
    return f.scale ? ssdbcodi::min_max_scaled(ds) : ds;
}

ssdbcodi::TrialConfig trial_config(const PipelineFlags& f, unsigned threads) {
    if (f.alpha + f.beta > 1.0 + 1e-12) throw UsageError("--alpha + --beta must not exceed 1");
    ssdbcodi::TrialConfig c;
    c.seed = f.seed;
    c.stratified = f.stratified;
    c.params.score = {f.alpha, f.beta, f.min_pts};
    if (f.k_reliable != "AUTO" && f.k_reliable != "auto") {
        try {
            std::size_t pos = 0;
            const long long k = std::stoll(f.k_reliable, &pos);
            if (pos != f.k_reliable.size() || k < 0) throw std::invalid_argument("negative");
            c.params.k_reliable = static_cast<std::size_t>(k);
        } catch (const std::exception&) {
            throw UsageError("--k-reliable must be a non-negative integer or AUTO");
        }
    }
    c.params.knn_k = f.knn_k;
    c.params.threads = threads;
    c.tune = f.tune;
    c.tune_options.grid_step = f.grid_step;
    c.tune_options.folds = f.folds;
    c.per_point = f.per_point;
    c.timing = !f.no_timing;
    return c;
}

std::vector<double> percent_list(const std::vector<double>& percents) {
    std::vector<double> out;
    for (double p : percents) {
        if (!(p > 0.0 && p <= 100.0)) throw UsageError("--fractions values are percentages in (0, 100]");
        out.push_back(p / 100.0);
    }
    return out;
}

void emit(const InputFlags& f, const std::string& text) {
    if (f.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(f.output);
    if (!out) throw std::runtime_error("cannot write '" + f.output + "'");
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Semi-supervised density-based clustering with integrated outlier detection"};
    app.require_subcommand(1);

    InputFlags in;
    PipelineFlags pf;
    double label_fraction = 0.1;
    std::vector<double> fractions{5, 10, 15, 20, 25};
    std::size_t trials = 10;

    auto* run = app.add_subcommand("run", "one seeded pipeline run, JSON report");
    add_input_flags(run, in);
    add_pipeline_flags(run, pf);
    run->add_option("--label-fraction", label_fraction, "fraction of points revealed as labels")
        ->check(CLI::Range(1e-12, 1.0))
        ->capture_default_str();
    run->add_flag("--no-timing", pf.no_timing, "omit wall-time from the report");
    run->add_flag("--per-point", pf.per_point, "include per-point predictions and scores");

    auto* bench = app.add_subcommand("benchmark", "seeded multi-trial runs, CSV of metric means/stds");
    add_input_flags(bench, in);
    add_pipeline_flags(bench, pf);
    bench->add_option("--fractions", fractions, "label percentages")->delimiter(',')->capture_default_str();
    bench->add_option("--trials", trials, "trials per fraction")->check(CLI::PositiveNumber)->capture_default_str();

    auto* sens = app.add_subcommand("sensitivity", "metric means over the alpha/beta lattice, CSV");
    add_input_flags(sens, in);
    add_pipeline_flags(sens, pf);
    sens->add_option("--fractions", fractions, "label percentages")->delimiter(',')->capture_default_str();
    sens->add_option("--trials", trials, "trials per cell")->check(CLI::PositiveNumber)->capture_default_str();

    ssdbcodi::BaselineConfig bc;
    std::optional<std::size_t> baseline_k;
    auto* base = app.add_subcommand("baseline", "DBSCAN, k-means, LOF or SSDBSCAN on the same data");
    add_input_flags(base, in);
    base->add_option("--algo", bc.algo, "dbscan | kmeans | lof | ssdbscan")->required();
    base->add_option("--epsilon", bc.epsilon, "DBSCAN radius")->capture_default_str();
    base->add_option("--k", baseline_k, "k-means clusters or LOF neighbors");
    base->add_option("--min-pts", bc.min_pts, "DBSCAN/SSDBSCAN MinPts")->check(CLI::PositiveNumber)->capture_default_str();
    base->add_option("--seed", bc.seed, "random seed")->capture_default_str();
    base->add_option("--max-iter", bc.max_iter, "k-means iteration cap")->check(CLI::PositiveNumber)->capture_default_str();
    base->add_option("--label-fraction", bc.label_fraction, "SSDBSCAN label fraction")
        ->check(CLI::Range(1e-12, 1.0))
        ->capture_default_str();
    base->add_flag("--stratified-labels", bc.stratified, "draw at least one label per true cluster");

    auto* desc = app.add_subcommand("describe", "dataset characteristics as JSON");
    add_input_flags(desc, in);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (run->parsed()) {
            auto config = trial_config(pf, in.threads);
            config.label_fraction = label_fraction;
            const auto ds = load(in);
            emit(in, ssdbcodi::to_json(ssdbcodi::run_trial(ds, config)).dump(2) + "\n");
        } else if (bench->parsed()) {
            const auto config = trial_config(pf, 1);
            const auto fr = percent_list(fractions);
            const auto ds = load(in);
            std::ostringstream out;
            ssdbcodi::write_benchmark_csv(out, ssdbcodi::benchmark(ds, config, fr, trials, pf.seed, in.threads));
            emit(in, out.str());
        } else if (sens->parsed()) {
            const auto config = trial_config(pf, 1);
            const auto fr = percent_list(fractions);
            const double inv = 1.0 / pf.grid_step;
            if (std::abs(inv - std::round(inv)) > 1e-9) throw UsageError("--grid-step must divide 1 evenly");
            const auto ds = load(in);
            std::ostringstream out;
            ssdbcodi::write_sensitivity_csv(
                out, ssdbcodi::sensitivity(ds, config, fr, pf.grid_step, trials, pf.seed, in.threads));
            emit(in, out.str());
        } else if (base->parsed()) {
            if (bc.algo != "dbscan" && bc.algo != "kmeans" && bc.algo != "lof" && bc.algo != "ssdbscan")
                throw UsageError("--algo must be one of dbscan, kmeans, lof, ssdbscan (got '" + bc.algo + "')");
            bc.k = baseline_k;
            const auto ds = load(in);
            emit(in, ssdbcodi::to_json(ssdbcodi::run_baseline(ds, bc)).dump(2) + "\n");
        } else if (desc->parsed()) {
            emit(in, ssdbcodi::describe(load(in)).dump(2) + "\n");
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return 0;
}
