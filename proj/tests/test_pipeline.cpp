#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "ssdbcodi/pipeline.hpp"

using namespace ssdbcodi;

namespace {

// Two 8-point rings around (0,0) and (10,0), a labeled outlier at (30,30)
// and an unlabeled far point at (31,30).
Dataset eighteen_points() {
    std::vector<std::vector<double>> rows;
    std::vector<ClassId> truth;
    for (int b = 0; b < 2; ++b)
        for (int dx = -1; dx <= 1; ++dx)
            for (int dy = -1; dy <= 1; ++dy) {
                if (dx == 0 && dy == 0) continue;
                rows.push_back({10.0 * b + 0.5 * dx, 0.5 * dy});
                truth.push_back(b);
            }
    rows.push_back({30, 30});
    rows.push_back({31, 30});
    truth.push_back(kOutlier);
    truth.push_back(kOutlier);
    return make_dataset(Matrix::from_rows(rows), truth, "eighteen");
}

// A and B are labeled groups on a line, S sits alone in the gap, H (hidden
// outlier) and G form a tight pair far beyond B.
Dataset gap_instance() {
    const std::vector<double> xs{0, 1, 2, 3, 4, 20, 20.5, 21, 21.5, 22, 12, 60, 61};
    Matrix m(xs.size(), 1);
    for (std::size_t i = 0; i < xs.size(); ++i) m(i, 0) = xs[i];
    return make_dataset(m, {0, 0, 0, 0, 0, 1, 1, 1, 1, 1, kOutlier, kOutlier, kOutlier}, "gap");
}

}  // namespace

TEST_CASE("fully labeled data reproduces the labels") {
    std::mt19937_64 rng(1);
    const auto x = oracle::random_points(rng, 30, 2);
    std::vector<ClassId> truth(30);
    LabelSet labels;
    for (Index i = 0; i < 30; ++i) {
        truth[i] = x(i, 0) < 0.5 ? 0 : 1;
        labels.normal[i] = truth[i];
    }
    const auto ds = make_dataset(x, truth);
    PipelineParams p;
    p.k_reliable = 0;
    p.knn_k = 1;
    const auto res = run(ds, labels, p);
    CHECK(res.clusters == truth);
    CHECK(res.training.outlier_count() == 0);
}

TEST_CASE("two blobs with one labeled outlier") {
    const auto ds = eighteen_points();
    LabelSet labels;
    labels.normal[0] = 0;
    labels.normal[8] = 1;
    labels.outliers.insert(16);
    PipelineParams p;
    p.k_reliable = 1;
    p.knn_k = 1;
    p.score.min_pts = 3;
    const auto res = run(ds, labels, p);
    CHECK(res.clusters == ds.truth);
    CHECK(res.outliers[17]);
    CHECK(res.outlier_score[17] == 1.0);
    for (Index i = 0; i < 16; ++i) CHECK(res.outlier_score[i] == 0.0);
    CHECK(res.k_reliable == 1);
    CHECK(res.training.size() == 17);
}

TEST_CASE("pipeline results are deterministic and thread independent") {
    const auto ds = eighteen_points();
    LabelSet labels;
    labels.normal[0] = 0;
    labels.normal[9] = 1;
    labels.outliers.insert(17);
    PipelineParams p;
    const auto a = run(ds, labels, p);
    p.threads = 3;
    const auto b = run(ds, labels, p);
    CHECK(a.clusters == b.clusters);
    CHECK(a.outlier_score == b.outlier_score);
    CHECK(a.scores.t_score == b.scores.t_score);
    CHECK(a.training.entries == b.training.entries);
}

TEST_CASE("pipeline guards") {
    const auto ds = eighteen_points();
    LabelSet only_outliers;
    only_outliers.outliers.insert(16);
    CHECK_THROWS(run(ds, only_outliers, PipelineParams{}));
    LabelSet labels;
    labels.normal[0] = 0;
    PipelineParams p;
    p.score.alpha = 0.8;
    p.score.beta = 0.8;
    CHECK_THROWS(run(ds, labels, p));
    p = {};
    p.k_reliable = 100;
    CHECK_THROWS(run(ds, labels, p));
    const auto idx = build_index(ds, 2);
    CHECK_THROWS(run(ds, idx, labels, PipelineParams{}));
}

TEST_CASE("weight lattice") {
    const auto cells = weight_lattice(0.5);
    CHECK(cells == std::vector<std::pair<double, double>>{{0, 0}, {0, 0.5}, {0, 1}, {0.5, 0}, {0.5, 0.5}, {1, 0}});
    CHECK(weight_lattice(0.1).size() == 66);
    for (auto [a, b] : weight_lattice(0.1)) CHECK(a + b <= 1.0 + 1e-12);
    CHECK(weight_lattice(0.3).size() == 10);
    CHECK_THROWS(weight_lattice(0.0));
}

TEST_CASE("label folds partition the labeled set") {
    LabelSet labels;
    for (Index i = 0; i < 12; ++i) labels.normal[i * 3] = static_cast<ClassId>(i % 2);
    labels.outliers = {1, 4, 7};
    const auto folds = label_folds(labels, 5, 9);
    std::set<Index> all;
    for (const auto& f : folds) {
        std::size_t normals = 0;
        for (Index i : f) {
            CHECK(all.insert(i).second);
            normals += labels.normal.contains(i);
        }
        CHECK(normals >= 2);
    }
    CHECK(all.size() == labels.size());
    CHECK(label_folds(labels, 5, 9) == folds);
    CHECK_THROWS(label_folds(labels, 1, 0));
    CHECK_THROWS(label_folds(labels, 13, 0));
}

TEST_CASE("tuning picks the reachability weight when only it separates the hidden outlier") {
    const auto ds = gap_instance();
    LabelSet labels;
    labels.normal = {{0, 0}, {2, 0}, {4, 0}, {5, 1}, {7, 1}, {9, 1}};
    labels.outliers = {11};
    PipelineParams p;
    p.score.min_pts = 1;
    p.knn_k = 2;
    const auto report = tune(ds, labels, p, {0.5, 2, 0});
    CHECK(report.grid.size() == 6);
    CHECK(report.best_alpha == 1.0);
    CHECK(report.best_beta == 0.0);
}

TEST_CASE("tuning ties resolve to the smallest cell") {
    std::vector<std::vector<double>> rows;
    std::vector<ClassId> truth;
    for (int i = 0; i < 8; ++i) {
        rows.push_back({static_cast<double>(i), 0.0});
        truth.push_back(0);
    }
    const auto ds = make_dataset(Matrix::from_rows(rows), truth);
    LabelSet labels;
    for (Index i = 0; i < 8; i += 2) labels.normal[i] = 0;
    const auto report = tune(ds, labels, PipelineParams{}, {0.25, 2, 3});
    for (const auto& c : report.grid) CHECK(c.objective == 1.0);
    CHECK(report.best_alpha == 0.0);
    CHECK(report.best_beta == 0.0);
}

TEST_CASE("validation objective") {
    PipelineResult r;
    r.clusters = {0, 0, kOutlier, 1};
    r.outlier_score = {0.0, 0.1, 0.9, 0.0};
    LabelSet hidden;
    hidden.normal = {{0, 0}, {1, 0}, {3, 1}};
    CHECK(validation_objective(r, hidden) == 1.0);
    hidden.outliers.insert(2);
    CHECK(validation_objective(r, hidden) == 1.0);
    LabelSet single;
    single.normal[3] = 0;
    CHECK(validation_objective(r, single) == 0.0);
    CHECK_THROWS(validation_objective(r, LabelSet{}));
}
