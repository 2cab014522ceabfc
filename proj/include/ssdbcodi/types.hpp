#ifndef SSDBCODI_TYPES_HPP
#define SSDBCODI_TYPES_HPP

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ssdbcodi {

using Index = std::size_t;

// Class ids are non-negative cluster ids or one of the sentinels below.
using ClassId = int;
inline constexpr ClassId kOutlier = -1;
inline constexpr ClassId kUnclustered = -2;
inline constexpr ClassId kNoise = -3;

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_)
            throw std::invalid_argument("Matrix: data size does not match rows*cols");
    }

    static Matrix from_rows(const std::vector<std::vector<double>>& rows) {
        if (rows.empty()) return {};
        Matrix m(rows.size(), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_)
                throw std::invalid_argument("Matrix: ragged rows");
            std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * m.cols_);
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

    const std::vector<double>& data() const { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

double euclidean(std::span<const double> a, std::span<const double> b);

}  // namespace ssdbcodi

#endif  // SSDBCODI_TYPES_HPP
