#ifndef SSDBCODI_DATASET_HPP
#define SSDBCODI_DATASET_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ssdbcodi/types.hpp"

namespace ssdbcodi {

/// Feature matrix plus ground truth. truth[i] is a cluster id in 0..K-1 or kOutlier.
struct Dataset {
    Matrix points;
    std::vector<ClassId> truth;
    std::string name;

    std::size_t size() const { return points.rows(); }
    std::size_t dims() const { return points.cols(); }
    std::size_t num_clusters() const;
    std::size_t num_outliers() const;

    /// Throws std::invalid_argument if any invariant is broken.
    void validate() const;
};

/// Builds a validated dataset; cluster ids must already be contiguous.
Dataset make_dataset(Matrix points, std::vector<ClassId> truth, std::string name = {});

/// Row/column-located ingestion failure.
class CsvError : public std::runtime_error {
public:
    CsvError(const std::string& what, std::size_t row = 0, std::size_t column = 0)
        : std::runtime_error(what), row_(row), column_(column) {}
    std::size_t row() const { return row_; }
    std::size_t column() const { return column_; }

private:
    std::size_t row_;
    std::size_t column_;
};

struct CsvOptions {
    std::string label_column = "label";
    std::string outlier_sentinel = "o";
};

Dataset load_csv(const std::string& path, const CsvOptions& options = {});
Dataset parse_csv(std::istream& in, const CsvOptions& options = {}, std::string name = {});

/// Min-max scales every feature column into [0, 1]; constant columns become 0.
Dataset min_max_scaled(const Dataset& ds);

/// User-visible labels: D_N (index -> cluster id) and D_O.
struct LabelSet {
    std::map<Index, ClassId> normal;
    std::set<Index> outliers;

    std::size_t size() const { return normal.size() + outliers.size(); }
    bool empty() const { return size() == 0; }
    bool is_labeled(Index i) const { return normal.contains(i) || outliers.contains(i); }

    /// User label of i: cluster id, kOutlier, or nullopt when unlabeled.
    std::optional<ClassId> label_of(Index i) const;

    /// Sorted union of labeled indices (D_L).
    std::vector<Index> labeled() const;

    /// Throws std::invalid_argument on overlap or out-of-range indices.
    void validate(std::size_t n) const;

    /// Canonical text form; byte-identical for equal label sets.
    std::string serialize() const;

    bool operator==(const LabelSet&) const = default;
};

/// Label set that reveals the ground truth of the given indices.
LabelSet reveal_labels(const Dataset& ds, const std::vector<Index>& indices);

/// Number of labels drawn for a fraction: round-half-up of fraction*n.
std::size_t label_count(std::size_t n, double fraction);

/// Draws round(fraction*n) distinct indices uniformly at random. When
/// `stratified` is set, one index per true cluster is drawn first so every
/// cluster has at least one label (the count is raised to K if needed).
LabelSet sample_labels(const Dataset& ds, double fraction, std::uint64_t seed,
                       bool stratified = false);

}  // namespace ssdbcodi

#endif  // SSDBCODI_DATASET_HPP
