#ifndef EEGVAL_MATRIX_HPP
#define EEGVAL_MATRIX_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "eegval/errors.hpp"

namespace eegval {

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const double> row(std::size_t r) const {
        return {data_.data() + r * cols_, cols_};
    }
    std::span<double> row(std::size_t r) {
        return {data_.data() + r * cols_, cols_};
    }

    const std::vector<double>& data() const { return data_; }

    /// New matrix containing the given rows, in the given order.
    Matrix take_rows(const std::vector<std::size_t>& idx) const {
        Matrix out(idx.size(), cols_);
        for (std::size_t i = 0; i < idx.size(); ++i) {
            auto src = row(idx[i]);
            std::copy(src.begin(), src.end(), out.row(i).begin());
        }
        return out;
    }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

/// Feature rows for a set of trials plus the metadata needed for grouped
/// validation: one subject id, label and trial id per row.
struct FeatureMatrix {
    Matrix values;
    std::vector<std::string> feature_names;
    std::vector<std::string> subject_ids;
    std::vector<int> labels;
    std::vector<std::string> trial_ids;

    std::size_t rows() const { return values.rows(); }
    std::size_t cols() const { return values.cols(); }

    FeatureMatrix take_rows(const std::vector<std::size_t>& idx) const {
        FeatureMatrix out;
        out.values = values.take_rows(idx);
        out.feature_names = feature_names;
        out.subject_ids.reserve(idx.size());
        out.labels.reserve(idx.size());
        out.trial_ids.reserve(idx.size());
        for (std::size_t i : idx) {
            out.subject_ids.push_back(subject_ids[i]);
            out.labels.push_back(labels[i]);
            out.trial_ids.push_back(trial_ids[i]);
        }
        return out;
    }

    void check_consistent() const {
        if (subject_ids.size() != rows() || labels.size() != rows() ||
            trial_ids.size() != rows() || feature_names.size() != cols())
            throw DimensionMismatch("feature matrix metadata out of sync");
    }
};

} // namespace eegval

#endif
