#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "ssdbcodi/model.hpp"

using namespace ssdbcodi;

namespace {

ScoreTable scores_with_t(std::vector<double> t) {
    ScoreTable st;
    st.r_score.assign(t.size(), 1.0);
    st.l_score.assign(t.size(), 1.0);
    st.sim_score.assign(t.size(), 0.0);
    st.t_score = std::move(t);
    return st;
}

}  // namespace

TEST_CASE("reliable outliers are the top t scores among unclustered points") {
    // point 0 is clustered; a=1, b=2, c=3 are unclustered
    const ClusterAssignment a{{0, kUnclustered, kUnclustered, kUnclustered}};
    const auto st = scores_with_t({0.99, 0.9, 0.5, 0.7});

    const auto two = select_reliable(a, st, 2);
    CHECK(two.outlier_count() == 2);
    CHECK(two.entries == std::vector<TrainingEntry>{{0, 0, 1.0}, {1, kOutlier, 0.9}, {3, kOutlier, 0.7}});

    const auto none = select_reliable(a, st, 0);
    CHECK(none.entries == std::vector<TrainingEntry>{{0, 0, 1.0}});

    CHECK(select_reliable(a, st, 3).outlier_count() == 3);
    CHECK_THROWS(select_reliable(a, st, 4));
}

TEST_CASE("default reliable count follows the labeled contamination") {
    LabelSet labels;
    for (Index i = 0; i < 9; ++i) labels.normal[i] = 0;
    labels.outliers.insert(9);
    CHECK(default_reliable_count(400, labels, 100) == 40);
    CHECK(default_reliable_count(400, labels, 12) == 12);
    labels.outliers.clear();
    CHECK(default_reliable_count(400, labels, 100) == 20);
}

TEST_CASE("degenerate and nearest-neighbor classifiers") {
    const Matrix x = oracle::line({0, 1, 10, 11, 90, 100});
    const auto single = train(TrainingSet{{{2, 4, 0.3}}}, x, 1);
    CHECK(single.predict(x.row(0)).cls == 4);
    CHECK(single.predict(x.row(5)).cls == 4);

    const TrainingSet line{{{0, 0, 1.0}, {1, 0, 1.0}, {2, 1, 1.0}, {3, 1, 1.0}, {4, kOutlier, 0.6}}};
    const auto nn = train(line, x, 1);
    CHECK(nn.predict(x.row(5)) == Prediction{kOutlier, 1.0});
    CHECK(nn.predict(x.row(4)) == Prediction{kOutlier, 1.0});
    CHECK(nn.predict(x.row(1)) == Prediction{0, 0.0});

    CHECK_THROWS(train(TrainingSet{}, x, 1));
    CHECK_THROWS(train(line, x, 6));
    CHECK_THROWS(train(TrainingSet{{{0, 0, 1.0}, {0, 1, 1.0}}}, x, 1));
    CHECK_THROWS(train(TrainingSet{{{0, 0, -1.0}}}, x, 1));
    CHECK_THROWS(nn.predict(std::vector<double>{1.0, 2.0}));
}

TEST_CASE("weighted vote between equidistant neighbors") {
    const Matrix x = oracle::line({-1, 1, 0});
    const auto cl = train(TrainingSet{{{0, 0, 0.9}, {1, kOutlier, 0.1}}}, x, 2);
    const auto p = cl.predict(x.row(2));
    CHECK(p.cls == 0);
    CHECK(p.outlier_score == doctest::Approx(0.1));
}

TEST_CASE("vote ties favor clusters, then the lower id") {
    const Matrix x = oracle::line({-1, 1, 0, 3});
    CHECK(train(TrainingSet{{{0, 0, 0.5}, {1, kOutlier, 0.5}}}, x, 2).predict(x.row(2)).cls == 0);
    CHECK(train(TrainingSet{{{0, 3, 0.5}, {1, 2, 0.5}}}, x, 2).predict(x.row(2)).cls == 2);
    CHECK(train(TrainingSet{{{0, kOutlier, 0.5}, {1, kOutlier, 0.5}}}, x, 2).predict(x.row(2)) ==
          Prediction{kOutlier, 1.0});
}

TEST_CASE("zero weights fall back to plain counts") {
    const Matrix x = oracle::line({0, 1, 2, 5});
    const auto cl = train(TrainingSet{{{0, kOutlier, 0.0}, {1, kOutlier, 0.0}, {2, 0, 0.0}}}, x, 3);
    const auto p = cl.predict(x.row(3));
    CHECK(p.cls == kOutlier);
    CHECK(p.outlier_score == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("classifier properties on random training sets") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 5 + rng() % 40;
        const auto x = oracle::random_points(rng, n, 2);
        TrainingSet ts;
        for (Index i = 0; i < n; ++i)
            if (u(rng) < 0.6) ts.entries.push_back({i, u(rng) < 0.3 ? kOutlier : ClassId(rng() % 3), u(rng)});
        if (ts.empty()) continue;
        const std::size_t k = 1 + rng() % ts.size();
        const auto base = predict(train(ts, x, k), x);

        auto scaled = ts;
        for (auto& e : scaled.entries) e.weight *= 0.25;
        CHECK(predict(train(scaled, x, k), x).clusters == base.clusters);

        auto shuffled = ts;
        std::shuffle(shuffled.entries.begin(), shuffled.entries.end(), rng);
        const auto again = predict(train(shuffled, x, k), x, 3);
        CHECK(again.clusters == base.clusters);
        CHECK(again.outlier_score == base.outlier_score);

        for (Index i = 0; i < n; ++i) {
            CHECK(base.outlier_score[i] >= 0.0);
            CHECK(base.outlier_score[i] <= 1.0);
            if (base.outliers[i]) CHECK(base.outlier_score[i] > 0.0);
        }
    }
}
