/**
 * @file bspline.hpp
 * @brief Clamped cubic B-spline curves over data-site parameters.
 *
 * For n data sites with parameters t_1 < ... < t_n the knot vector is
 *
 *   t_1, t_1, t_1, t_1, t_2, ..., t_{n-1}, t_n, t_n, t_n, t_n      (n + 6 knots)
 *
 * which carries n + 2 cubic basis functions. Basis functions and control
 * points share one 0-based index j in [0, n + 2): basis j is supported on
 * [knot(j), knot(j + 4)] and multiplies control point j, so
 *
 *   C(t) = sum_j control_j * N_j(t).
 *
 * Spans are half-open [knot(s), knot(s + 1)) except the last non-empty span,
 * which is closed so that the curve interpolates its last control point.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pgim/error.hpp"
#include "pgim/points.hpp"

namespace pgim {

enum class ParamScheme { chord_length, uniform };

/// Strictly increasing data-site parameters normalized to [0, 1].
class ParameterVector {
public:
    explicit ParameterVector(std::vector<double> values) : values_(std::move(values)) {
        if (values_.size() < PointSet::min_points) {
            throw Error(Errc::TooFewPoints, "need at least 4 parameters");
        }
        if (values_.front() != 0.0 || values_.back() != 1.0) {
            throw Error(Errc::InvalidParameters, "parameters must start at 0 and end at 1");
        }
        for (std::size_t i = 1; i < values_.size(); ++i) {
            if (!(values_[i - 1] < values_[i])) {
                throw Error(Errc::InvalidParameters,
                            "parameters not strictly increasing at index " + std::to_string(i));
            }
        }
    }

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

    friend bool operator==(const ParameterVector&, const ParameterVector&) = default;

private:
    std::vector<double> values_;
};

/// Assigns parameters to data points.
///
/// Chord length uses cumulative Euclidean distances normalized by the total
/// polygon length; uniform uses i / (n - 1).
inline ParameterVector parameterize(const PointSet& points, ParamScheme scheme = ParamScheme::chord_length) {
    const std::size_t n = points.size();
    std::vector<double> t(n, 0.0);
    if (scheme == ParamScheme::uniform) {
        for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<double>(i) / static_cast<double>(n - 1);
        t.back() = 1.0;
        return ParameterVector(std::move(t));
    }
    for (std::size_t i = 1; i < n; ++i) {
        const double chord = distance(points[i - 1], points[i]);
        if (!(chord > 0.0)) {
            throw Error(Errc::ConsecutiveDuplicatePoints,
                        "points " + std::to_string(i - 1) + " and " + std::to_string(i) + " coincide");
        }
        t[i] = t[i - 1] + chord;
    }
    const double total = t.back();
    for (auto& v : t) v /= total;
    t.back() = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        if (!(t[i - 1] < t[i])) {
            throw Error(Errc::ConsecutiveDuplicatePoints,
                        "chord " + std::to_string(i) + " vanishes after normalization");
        }
    }
    return ParameterVector(std::move(t));
}

/// Clamped cubic knot vector with quadruple end knots (n + 6 entries).
class KnotVector {
public:
    static constexpr std::size_t degree = 3;

    explicit KnotVector(const ParameterVector& params) : n_(params.size()) {
        knots_.reserve(n_ + 6);
        knots_.insert(knots_.end(), 3, params[0]);
        for (double t : params.values()) knots_.push_back(t);
        knots_.insert(knots_.end(), 3, params[n_ - 1]);
    }

    /// Number of data sites n.
    [[nodiscard]] std::size_t sites() const noexcept { return n_; }
    /// Number of basis functions (= control points), n + 2.
    [[nodiscard]] std::size_t basis_count() const noexcept { return n_ + 2; }
    [[nodiscard]] std::size_t size() const noexcept { return knots_.size(); }
    double operator[](std::size_t m) const noexcept { return knots_[m]; }
    [[nodiscard]] std::span<const double> values() const noexcept { return knots_; }

    [[nodiscard]] double front() const noexcept { return knots_[3]; }
    [[nodiscard]] double back() const noexcept { return knots_[n_ + 2]; }

    /// Span s in [3, n + 1] with knot(s) <= t < knot(s + 1); t = back() maps to n + 1.
    [[nodiscard]] std::size_t span(double t) const {
        check_domain(t);
        if (t >= back()) return n_ + 1;
        const auto first = knots_.begin() + 3;
        const auto last = knots_.begin() + static_cast<std::ptrdiff_t>(n_ + 3);
        const auto it = std::upper_bound(first, last, t);
        return static_cast<std::size_t>(it - knots_.begin()) - 1;
    }

    void check_domain(double t) const {
        if (!(t >= front() && t <= back())) {
            throw Error(Errc::ParameterOutOfDomain, "t = " + std::to_string(t) + " outside knot domain");
        }
    }

    friend bool operator==(const KnotVector&, const KnotVector&) = default;

private:
    std::size_t n_;
    std::vector<double> knots_;
};

inline KnotVector build_knots(const ParameterVector& params) { return KnotVector(params); }

/// Single cubic basis function N_j(t) by the Cox-de Boor recursion (0/0 := 0).
inline double basis_eval(const KnotVector& knots, std::size_t j, double t) {
    if (j >= knots.basis_count()) {
        throw Error(Errc::IndexOutOfRange, "basis index " + std::to_string(j) + " out of range");
    }
    const std::size_t s = knots.span(t);
    // Degree-0 functions over the five knot intervals [j, j + 4).
    std::array<double, 4> N{};
    for (std::size_t m = 0; m < 4; ++m) N[m] = (j + m == s) ? 1.0 : 0.0;
    for (std::size_t p = 1; p <= 3; ++p) {
        for (std::size_t m = 0; m + p < 4; ++m) {
            const std::size_t a = j + m;
            double v = 0.0;
            const double left = knots[a + p] - knots[a];
            if (left > 0.0) v += (t - knots[a]) / left * N[m];
            const double right = knots[a + p + 1] - knots[a + 1];
            if (right > 0.0) v += (knots[a + p + 1] - t) / right * N[m + 1];
            N[m] = v;
        }
    }
    return N[0];
}

/// The four possibly-nonzero basis values at t: N_first .. N_{first+3}.
struct BasisWindow {
    std::size_t first;
    std::array<double, 4> values;
};

/// Span-local evaluation of the nonzero cubic basis functions at t.
inline BasisWindow basis_nonzero(const KnotVector& knots, double t) {
    const std::size_t s = knots.span(t);
    std::array<double, 4> N{1.0, 0.0, 0.0, 0.0};
    std::array<double, 4> left{};
    std::array<double, 4> right{};
    for (std::size_t p = 1; p <= 3; ++p) {
        left[p] = t - knots[s + 1 - p];
        right[p] = knots[s + p] - t;
        double saved = 0.0;
        for (std::size_t r = 0; r < p; ++r) {
            // Multiply before dividing so the clamped ends give exactly 1.
            const double denom = right[r + 1] + left[p - r];
            const double nr = N[r];
            N[r] = saved + (denom > 0.0 ? right[r + 1] * nr / denom : 0.0);
            saved = denom > 0.0 ? left[p - r] * nr / denom : 0.0;
        }
        N[p] = saved;
    }
    return {s - 3, N};
}

/// Control points of a cubic curve: exactly n + 2 points for n data sites.
class ControlPolygon {
public:
    explicit ControlPolygon(PointStack points) : points_(std::move(points)) {}

    [[nodiscard]] std::size_t size() const noexcept { return points_.rows(); }
    [[nodiscard]] std::size_t dim() const noexcept { return points_.dim(); }
    [[nodiscard]] const PointStack& stack() const noexcept { return points_; }
    [[nodiscard]] std::span<const double> operator[](std::size_t j) const noexcept { return points_.row(j); }

private:
    PointStack points_;
};

/// C(t) for the given knots and control polygon.
inline std::vector<double> curve_eval(const KnotVector& knots, const ControlPolygon& control, double t) {
    if (control.size() != knots.basis_count()) {
        throw Error(Errc::DimensionMismatch, "control polygon has " + std::to_string(control.size()) +
                                                 " points, knots require " + std::to_string(knots.basis_count()));
    }
    const auto [first, w] = basis_nonzero(knots, t);
    std::vector<double> out(control.dim(), 0.0);
    for (std::size_t r = 0; r < 4; ++r) {
        if (first + r >= control.size()) break;
        const auto p = control[first + r];
        for (std::size_t k = 0; k < out.size(); ++k) out[k] += w[r] * p[k];
    }
    return out;
}

/// Samples the curve at m equally spaced parameters over the knot domain.
inline PointStack curve_sample(const KnotVector& knots, const ControlPolygon& control, std::size_t m) {
    if (m < 2) throw Error(Errc::InvalidArgument, "need at least 2 samples");
    PointStack out(m, control.dim());
    const double a = knots.front();
    const double b = knots.back();
    for (std::size_t k = 0; k < m; ++k) {
        const double t = k + 1 == m ? b : a + (b - a) * static_cast<double>(k) / static_cast<double>(m - 1);
        const auto p = curve_eval(knots, control, t);
        std::copy(p.begin(), p.end(), out.row(k).begin());
    }
    return out;
}

}  // namespace pgim
