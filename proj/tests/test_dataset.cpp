#include <doctest.h>

#include <set>
#include <sstream>

#include "ssdbcodi/dataset.hpp"

using namespace ssdbcodi;

namespace {

Dataset parse(const std::string& text, CsvOptions opts = {}) {
    std::istringstream in(text);
    return parse_csv(in, opts, "t");
}

Dataset blobs_with_outliers(std::size_t normals, std::size_t outliers) {
    Matrix m(normals + outliers, 1);
    std::vector<ClassId> truth;
    for (std::size_t i = 0; i < normals + outliers; ++i) {
        m(i, 0) = static_cast<double>(i);
        truth.push_back(i < normals ? static_cast<ClassId>(i % 3) : kOutlier);
    }
    return make_dataset(std::move(m), std::move(truth), "synthetic");
}

}  // namespace

TEST_CASE("csv labels are remapped in order of first appearance") {
    const auto ds = parse("x,label\n1,a\n2,o\n3,a\n4,b\n");
    CHECK(ds.size() == 4);
    CHECK(ds.dims() == 1);
    CHECK(ds.truth == std::vector<ClassId>{0, kOutlier, 0, 1});
    CHECK(ds.num_clusters() == 2);
    CHECK(ds.num_outliers() == 1);
    CHECK(ds.name == "t");
}

TEST_CASE("single row file") {
    const auto ds = parse("f,label\n0.5,a\n");
    CHECK(ds.size() == 1);
    CHECK(ds.dims() == 1);
    CHECK(ds.truth == std::vector<ClassId>{0});
}

TEST_CASE("label column may sit anywhere and sentinel is configurable") {
    const auto ds = parse("cls,x,y\nout,1,2\nk,3,4\n", {"cls", "out"});
    CHECK(ds.dims() == 2);
    CHECK(ds.points(0, 1) == 2.0);
    CHECK(ds.truth == std::vector<ClassId>{kOutlier, 0});
}

TEST_CASE("quoted fields, BOM, CRLF and blank lines") {
    const auto ds = parse("\xEF\xBB\xBF\"x\",label\r\n\r\n\"1.5\",\"a,b\"\r\n2,a\r\n");
    CHECK(ds.size() == 2);
    CHECK(ds.points(0, 0) == 1.5);
    CHECK(ds.truth == std::vector<ClassId>{0, 1});
}

TEST_CASE("co-membership is preserved by the remap") {
    const std::vector<std::string> raw{"z", "y", "z", "o", "y", "w", "o"};
    std::string text = "x,label\n";
    for (std::size_t i = 0; i < raw.size(); ++i) text += std::to_string(i) + "," + raw[i] + "\n";
    const auto ds = parse(text);
    for (std::size_t i = 0; i < raw.size(); ++i)
        for (std::size_t j = 0; j < raw.size(); ++j) {
            const bool same_cluster = ds.truth[i] == ds.truth[j] && ds.truth[i] != kOutlier;
            CHECK(same_cluster == (raw[i] == raw[j] && raw[i] != "o"));
        }
}

TEST_CASE("csv errors carry row and column") {
    CHECK_THROWS_AS(parse(""), CsvError);
    CHECK_THROWS_AS(parse("x,y\n1,2\n"), CsvError);
    CHECK_THROWS_AS(parse("x,label\n"), CsvError);
    CHECK_THROWS_AS(parse("x,x,label\n1,2,a\n"), CsvError);
    CHECK_THROWS_AS(parse("x,,label\n1,2,a\n"), CsvError);
    CHECK_THROWS_AS(parse("x,label\n1,a,3\n"), CsvError);
    CHECK_THROWS_AS(parse("x,label\n\"1,a\n"), CsvError);
    try {
        parse("x,y,label\n1,2,a\n3,abc,b\n");
        FAIL("expected CsvError");
    } catch (const CsvError& e) {
        CHECK(e.row() == 3);
        CHECK(e.column() == 2);
    }
    CHECK_THROWS_AS(load_csv("/nonexistent/file.csv"), CsvError);
}

TEST_CASE("min-max scaling maps each feature to [0,1]") {
    const auto ds = make_dataset(Matrix::from_rows({{0, 5}, {10, 5}, {5, 5}}), {0, 0, 0});
    const auto s = min_max_scaled(ds);
    CHECK(s.points(1, 0) == 1.0);
    CHECK(s.points(2, 0) == 0.5);
    CHECK(s.points(0, 1) == 0.0);
}

TEST_CASE("sample_labels draws round(fraction n) distinct indices") {
    const auto ds = blobs_with_outliers(95, 5);
    const auto labels = sample_labels(ds, 0.1, 42);
    CHECK(labels.size() == 10);
    for (Index i : labels.labeled()) {
        CHECK(i < 100);
        if (ds.truth[i] == kOutlier)
            CHECK(labels.outliers.contains(i));
        else
            CHECK(labels.normal.at(i) == ds.truth[i]);
    }
}

TEST_CASE("sample_labels is deterministic per seed") {
    const auto ds = blobs_with_outliers(95, 5);
    CHECK(sample_labels(ds, 0.25, 7).serialize() == sample_labels(ds, 0.25, 7).serialize());
    CHECK(sample_labels(ds, 0.25, 7) != sample_labels(ds, 0.25, 8));
}

TEST_CASE("fraction 1 reproduces the truth partition") {
    const auto ds = blobs_with_outliers(15, 5);
    const auto labels = sample_labels(ds, 1.0, 3);
    CHECK(labels.normal.size() == 15);
    CHECK(labels.outliers.size() == 5);
}

TEST_CASE("stratified sampling covers every cluster") {
    const auto ds = blobs_with_outliers(60, 0);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto labels = sample_labels(ds, 0.05, seed, true);
        std::set<ClassId> seen;
        for (auto [i, c] : labels.normal) seen.insert(c);
        CHECK(seen.size() == 3);
        CHECK(labels.size() == 3);
    }
}

TEST_CASE("sample_labels rejects bad fractions") {
    const auto ds = blobs_with_outliers(10, 0);
    CHECK_THROWS(sample_labels(ds, 0.0, 1));
    CHECK_THROWS(sample_labels(ds, 1.5, 1));
    CHECK_THROWS(sample_labels(ds, 0.01, 1));
}

TEST_CASE("label set validation") {
    LabelSet bad;
    bad.normal[1] = 0;
    bad.outliers.insert(1);
    CHECK_THROWS(bad.validate(5));
    LabelSet out_of_range;
    out_of_range.outliers.insert(9);
    CHECK_THROWS(out_of_range.validate(5));
}
