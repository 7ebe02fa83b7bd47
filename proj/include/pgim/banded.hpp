/**
 * @file banded.hpp
 * @brief Square banded matrices stored by rows of diagonals.
 *
 * Row i stores columns [i - lower, i + upper]; entry (i, j) lives at
 * data[i * width + (j - i + lower)] with width = lower + upper + 1. Slots
 * that fall outside the matrix (j < 0 or j >= n) are kept at zero.
 *
 * All indices are 0-based.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pgim/error.hpp"
#include "pgim/points.hpp"

namespace pgim {

class BandedMatrix {
public:
    BandedMatrix() = default;

    BandedMatrix(std::size_t n, std::size_t lower, std::size_t upper)
        : n_(n), lower_(lower), upper_(upper), data_(n * (lower + upper + 1), 0.0) {
        if (n == 0) throw Error(Errc::InvalidArgument, "banded matrix order must be >= 1");
        if (lower >= n || upper >= n) {
            throw Error(Errc::InvalidArgument, "bandwidths must be smaller than the order");
        }
    }

    static BandedMatrix identity(std::size_t n) {
        BandedMatrix I(n, 0, 0);
        for (std::size_t i = 0; i < n; ++i) I.set(i, i, 1.0);
        return I;
    }

    static BandedMatrix diagonal(std::span<const double> d) {
        BandedMatrix D(d.size(), 0, 0);
        for (std::size_t i = 0; i < d.size(); ++i) D.set(i, i, d[i]);
        return D;
    }

    [[nodiscard]] std::size_t order() const noexcept { return n_; }
    [[nodiscard]] std::size_t lower() const noexcept { return lower_; }
    [[nodiscard]] std::size_t upper() const noexcept { return upper_; }

    [[nodiscard]] bool in_band(std::size_t i, std::size_t j) const noexcept {
        return i < n_ && j < n_ && j + lower_ >= i && j <= i + upper_;
    }

    /// First and one-past-last column stored for row i.
    [[nodiscard]] std::size_t row_begin(std::size_t i) const noexcept { return i > lower_ ? i - lower_ : 0; }
    [[nodiscard]] std::size_t row_end(std::size_t i) const noexcept { return std::min(n_, i + upper_ + 1); }

    [[nodiscard]] double get(std::size_t i, std::size_t j) const {
        if (i >= n_ || j >= n_) throw Error(Errc::IndexOutOfRange, index_text(i, j));
        return in_band(i, j) ? data_[slot(i, j)] : 0.0;
    }

    void set(std::size_t i, std::size_t j, double v) {
        if (i >= n_ || j >= n_) throw Error(Errc::IndexOutOfRange, index_text(i, j));
        if (!in_band(i, j)) throw Error(Errc::OutOfBandWrite, index_text(i, j));
        data_[slot(i, j)] = v;
    }

    /// Unchecked in-band access for kernels.
    [[nodiscard]] double at(std::size_t i, std::size_t j) const noexcept { return data_[slot(i, j)]; }
    double& at(std::size_t i, std::size_t j) noexcept { return data_[slot(i, j)]; }

    [[nodiscard]] Eigen::MatrixXd to_dense() const {
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = row_begin(i); j < row_end(i); ++j) {
                A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = at(i, j);
            }
        }
        return A;
    }

    friend bool operator==(const BandedMatrix&, const BandedMatrix&) = default;

private:
    [[nodiscard]] std::size_t slot(std::size_t i, std::size_t j) const noexcept {
        return i * (lower_ + upper_ + 1) + (j + lower_ - i);
    }
    static std::string index_text(std::size_t i, std::size_t j) {
        return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
    }

    std::size_t n_ = 0;
    std::size_t lower_ = 0;
    std::size_t upper_ = 0;
    std::vector<double> data_;
};

inline double band_get(const BandedMatrix& A, std::size_t i, std::size_t j) { return A.get(i, j); }
inline void band_set(BandedMatrix& A, std::size_t i, std::size_t j, double v) { A.set(i, j, v); }

/// A * x applied column-wise to a point stack.
inline PointStack band_matvec(const BandedMatrix& A, const PointStack& x) {
    if (x.rows() != A.order()) throw Error(Errc::DimensionMismatch, "matvec length mismatch");
    const std::size_t d = x.dim();
    PointStack y(A.order(), d);
    for (std::size_t i = 0; i < A.order(); ++i) {
        auto yi = y.row(i);
        for (std::size_t j = A.row_begin(i); j < A.row_end(i); ++j) {
            const double a = A.at(i, j);
            const auto xj = x.row(j);
            for (std::size_t k = 0; k < d; ++k) yi[k] += a * xj[k];
        }
    }
    return y;
}

inline std::vector<double> band_matvec(const BandedMatrix& A, std::span<const double> x) {
    if (x.size() != A.order()) throw Error(Errc::DimensionMismatch, "matvec length mismatch");
    std::vector<double> y(A.order(), 0.0);
    for (std::size_t i = 0; i < A.order(); ++i) {
        for (std::size_t j = A.row_begin(i); j < A.row_end(i); ++j) y[i] += A.at(i, j) * x[j];
    }
    return y;
}

/// Exact banded product; bandwidths add and are truncated at n - 1.
inline BandedMatrix band_mul(const BandedMatrix& A, const BandedMatrix& C) {
    if (A.order() != C.order()) throw Error(Errc::DimensionMismatch, "band_mul order mismatch");
    const std::size_t n = A.order();
    BandedMatrix P(n, std::min(A.lower() + C.lower(), n - 1), std::min(A.upper() + C.upper(), n - 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t m = A.row_begin(i); m < A.row_end(i); ++m) {
            const double a = A.at(i, m);
            for (std::size_t j = C.row_begin(m); j < C.row_end(m); ++j) P.at(i, j) += a * C.at(m, j);
        }
    }
    return P;
}

/// alpha * A + beta * C over the union of both bands.
inline BandedMatrix band_combine(double alpha, const BandedMatrix& A, double beta, const BandedMatrix& C) {
    if (A.order() != C.order()) throw Error(Errc::DimensionMismatch, "band_combine order mismatch");
    BandedMatrix R(A.order(), std::max(A.lower(), C.lower()), std::max(A.upper(), C.upper()));
    for (std::size_t i = 0; i < A.order(); ++i) {
        for (std::size_t j = A.row_begin(i); j < A.row_end(i); ++j) R.at(i, j) += alpha * A.at(i, j);
        for (std::size_t j = C.row_begin(i); j < C.row_end(i); ++j) R.at(i, j) += beta * C.at(i, j);
    }
    return R;
}

/// Solves M y = rhs for lower-triangular banded M (upper bandwidth 0).
inline PointStack forward_substitute(const BandedMatrix& M, const PointStack& rhs) {
    if (M.upper() != 0) throw Error(Errc::InvalidArgument, "forward_substitute needs upper bandwidth 0");
    if (rhs.rows() != M.order()) throw Error(Errc::DimensionMismatch, "forward_substitute length mismatch");
    const std::size_t d = rhs.dim();
    PointStack y = rhs;
    for (std::size_t i = 0; i < M.order(); ++i) {
        const double diag = M.at(i, i);
        if (diag == 0.0) throw Error(Errc::ZeroDiagonal, "zero pivot in row " + std::to_string(i));
        auto yi = y.row(i);
        for (std::size_t j = M.row_begin(i); j < i; ++j) {
            const double a = M.at(i, j);
            const auto yj = y.row(j);
            for (std::size_t k = 0; k < d; ++k) yi[k] -= a * yj[k];
        }
        for (std::size_t k = 0; k < d; ++k) yi[k] /= diag;
    }
    return y;
}

/// <A>: |a_ii| on the diagonal, -|a_ij| elsewhere.
inline BandedMatrix comparison_matrix(const BandedMatrix& A) {
    BandedMatrix C = A;
    for (std::size_t i = 0; i < A.order(); ++i) {
        for (std::size_t j = A.row_begin(i); j < A.row_end(i); ++j) {
            const double a = std::abs(A.at(i, j));
            C.at(i, j) = i == j ? a : -a;
        }
    }
    return C;
}

/// Implicit J = diag(1, -1, 1, ...).
struct SignMatrix {
    std::size_t n;

    [[nodiscard]] static constexpr double sign(std::size_t i) noexcept { return i % 2 == 0 ? 1.0 : -1.0; }

    [[nodiscard]] PointStack apply(const PointStack& x) const {
        if (x.rows() != n) throw Error(Errc::DimensionMismatch, "sign matrix length mismatch");
        PointStack y = x;
        for (std::size_t i = 1; i < n; i += 2) {
            for (double& v : y.row(i)) v = -v;
        }
        return y;
    }
};

/// J A J: entries scaled by (-1)^(i + j).
inline BandedMatrix sign_conjugate(const BandedMatrix& A) {
    BandedMatrix C = A;
    for (std::size_t i = 0; i < A.order(); ++i) {
        for (std::size_t j = A.row_begin(i); j < A.row_end(i); ++j) {
            if ((i + j) % 2 == 1) C.at(i, j) = -A.at(i, j);
        }
    }
    return C;
}

/// Splitting parts with the convention A = D - L - U.
struct SplitParts {
    BandedMatrix diag;   ///< D
    BandedMatrix lower;  ///< L, the negated strict lower triangle
    BandedMatrix upper;  ///< U, the negated strict upper triangle
};

inline SplitParts split_parts(const BandedMatrix& A) {
    const std::size_t n = A.order();
    SplitParts s{BandedMatrix(n, 0, 0), BandedMatrix(n, A.lower(), 0), BandedMatrix(n, 0, A.upper())};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = A.row_begin(i); j < A.row_end(i); ++j) {
            if (j < i) {
                s.lower.at(i, j) = -A.at(i, j);
            } else if (j > i) {
                s.upper.at(i, j) = -A.at(i, j);
            } else {
                s.diag.at(i, i) = A.at(i, i);
            }
        }
    }
    return s;
}

}  // namespace pgim
