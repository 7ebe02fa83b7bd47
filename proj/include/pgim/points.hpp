#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "pgim/error.hpp"

namespace pgim {

/// Dense row-major stack of points: one point per row, `dim` coordinates each.
///
/// Used for data points, control points, residuals and right-hand sides.
/// Banded operators act on it column-wise.
class PointStack {
public:
    PointStack() = default;
    PointStack(std::size_t rows, std::size_t dim, double fill = 0.0)
        : rows_(rows), dim_(dim), data_(rows * dim, fill) {}

    PointStack(std::initializer_list<std::initializer_list<double>> rows) {
        rows_ = rows.size();
        dim_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * dim_);
        for (const auto& r : rows) {
            if (r.size() != dim_) {
                throw Error(Errc::MixedDimensions, "rows of differing dimension");
            }
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] bool empty() const noexcept { return rows_ == 0; }

    double& operator()(std::size_t i, std::size_t k) noexcept { return data_[i * dim_ + k]; }
    double operator()(std::size_t i, std::size_t k) const noexcept { return data_[i * dim_ + k]; }

    [[nodiscard]] std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * dim_, dim_}; }
    [[nodiscard]] std::span<const double> row(std::size_t i) const noexcept {
        return {data_.data() + i * dim_, dim_};
    }

    [[nodiscard]] std::span<double> data() noexcept { return data_; }
    [[nodiscard]] std::span<const double> data() const noexcept { return data_; }

    void push_back(std::span<const double> point) {
        if (rows_ == 0 && dim_ == 0) dim_ = point.size();
        if (point.size() != dim_) {
            throw Error(Errc::MixedDimensions, "point dimension differs from stack dimension");
        }
        data_.insert(data_.end(), point.begin(), point.end());
        ++rows_;
    }

    friend bool operator==(const PointStack&, const PointStack&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t dim_ = 0;
    std::vector<double> data_;
};

/// Euclidean distance between two rows of (possibly different) stacks.
inline double distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        s += d * d;
    }
    return std::sqrt(s);
}

/// Largest row-wise Euclidean norm.
inline double max_row_norm(const PointStack& v) {
    double best = 0.0;
    for (std::size_t i = 0; i < v.rows(); ++i) {
        double s = 0.0;
        for (double x : v.row(i)) s += x * x;
        best = std::max(best, s);
    }
    return std::sqrt(best);
}

/// Largest coordinate-wise absolute difference between two stacks of equal shape.
inline double max_abs_diff(const PointStack& a, const PointStack& b) {
    if (a.rows() != b.rows() || a.dim() != b.dim()) {
        throw Error(Errc::DimensionMismatch, "stacks differ in shape");
    }
    double best = 0.0;
    auto x = a.data();
    auto y = b.data();
    for (std::size_t i = 0; i < x.size(); ++i) best = std::max(best, std::abs(x[i] - y[i]));
    return best;
}

/// Ordered data points to interpolate: n >= 4 points of dimension 2 or 3.
class PointSet {
public:
    static constexpr std::size_t min_points = 4;

    explicit PointSet(PointStack points) : points_(std::move(points)) {
        if (points_.rows() < min_points) {
            throw Error(Errc::TooFewPoints, "need at least 4 points, got " + std::to_string(points_.rows()));
        }
        if (points_.dim() != 2 && points_.dim() != 3) {
            throw Error(Errc::InvalidDimension, "points must be 2D or 3D");
        }
    }

    [[nodiscard]] std::size_t size() const noexcept { return points_.rows(); }
    [[nodiscard]] std::size_t dim() const noexcept { return points_.dim(); }
    [[nodiscard]] const PointStack& stack() const noexcept { return points_; }
    [[nodiscard]] std::span<const double> operator[](std::size_t i) const noexcept { return points_.row(i); }

    friend bool operator==(const PointSet&, const PointSet&) = default;

private:
    PointStack points_;
};

}  // namespace pgim
