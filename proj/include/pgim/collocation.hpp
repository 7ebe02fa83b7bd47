/**
 * @file collocation.hpp
 * @brief Collocation matrix B, preconditioner Q = I + S and the product QB.
 *
 * Rows and columns are 0-based over the n data sites. Column c of B
 * multiplies control point c + 1 (control points 0 and n + 1 are tied to
 * columns 0 and n - 1), so interior row r carries the three cubic basis
 * values that are nonzero at the site parameter t_r:
 *
 *   B(r, r - 1) = N_r(t_r),  B(r, r) = N_{r+1}(t_r),  B(r, r + 1) = N_{r+2}(t_r)
 *
 * while rows 0 and n - 1 are unit rows.
 */

#pragma once

#include <cstddef>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "pgim/banded.hpp"
#include "pgim/bspline.hpp"
#include "pgim/error.hpp"

namespace pgim {

/// Tridiagonal collocation system B x = p.
struct CollocationSystem {
    ParameterVector params;
    KnotVector knots;
    BandedMatrix B;  ///< order n, lower 1, upper 1

    [[nodiscard]] std::size_t size() const noexcept { return B.order(); }
};

/// Left-preconditioned system QB x = Q p.
struct PreconditionedSystem {
    BandedMatrix S;   ///< order n, upper 1: S(r, r + 1) = -B(r, r + 1)
    BandedMatrix Q;   ///< I + S
    BandedMatrix QB;  ///< order n, lower 1, upper 2
    SplitParts parts; ///< QB = D - L - U
};

/// Diagonal entries of D_QB below this are rejected.
inline constexpr double min_preconditioned_diagonal = 1e-14;

inline CollocationSystem assemble_B(const KnotVector& knots, const ParameterVector& params) {
    const std::size_t n = params.size();
    if (knots.sites() != n) throw Error(Errc::DimensionMismatch, "knots and parameters disagree in size");
    BandedMatrix B(n, 1, 1);
    B.set(0, 0, 1.0);
    B.set(n - 1, n - 1, 1.0);
    for (std::size_t r = 1; r + 1 < n; ++r) {
        const auto [first, w] = basis_nonzero(knots, params[r]);
        for (std::size_t c = 0; c < 4; ++c) {
            const std::size_t col = first + c - 1;  // basis j pairs with column j - 1
            if (w[c] == 0.0) continue;
            B.set(r, col, w[c]);
        }
    }
    return {params, knots, std::move(B)};
}

inline CollocationSystem assemble_B(const ParameterVector& params) { return assemble_B(build_knots(params), params); }

inline BandedMatrix assemble_S(const BandedMatrix& B) {
    const std::size_t n = B.order();
    BandedMatrix S(n, 0, 1);
    for (std::size_t r = 1; r + 1 < n; ++r) S.set(r, r + 1, -B.get(r, r + 1));
    return S;
}

/// QB from its entrywise closed form in the basis values at the sites.
///
/// With a_r, b_r, c_r the sub-, main and super-diagonal of B:
///   QB(r, r-1) = a_r
///   QB(r, r)   = b_r - c_r a_{r+1}       QB(n-2, n-2) = b_{n-2}
///   QB(r, r+1) = c_r - b_{r+1} c_r
///   QB(r, r+2) = -c_r c_{r+1}
/// for interior rows r < n - 2; the first and last rows stay unit rows.
inline PreconditionedSystem assemble_QB_closed(const CollocationSystem& sys) {
    const std::size_t n = sys.size();
    const auto& knots = sys.knots;
    const auto& params = sys.params;

    // Basis values (a, b, c) at every interior site, read from span-local evaluation.
    auto window = [&](std::size_t r) {
        const auto [first, w] = basis_nonzero(knots, params[r]);
        if (first != r) throw Error(Errc::InvalidParameters, "site " + std::to_string(r) + " not at its knot");
        return w;
    };

    BandedMatrix QB(n, 1, std::min<std::size_t>(2, n - 1));
    QB.set(0, 0, 1.0);
    QB.set(n - 1, n - 1, 1.0);
    for (std::size_t r = 1; r + 1 < n; ++r) {
        const auto w = window(r);
        QB.set(r, r - 1, w[0]);
        if (r + 2 < n) {
            const auto next = window(r + 1);
            QB.set(r, r, w[1] - w[2] * next[0]);
            QB.set(r, r + 1, w[2] - next[1] * w[2]);
            QB.set(r, r + 2, -w[2] * next[2]);
        } else {
            QB.set(r, r, w[1]);
        }
    }

    SplitParts parts = split_parts(QB);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(parts.diag.at(i, i) >= min_preconditioned_diagonal)) {
            throw Error(Errc::NonpositiveDiagonal, "D_QB(" + std::to_string(i) + ") = " +
                                                       std::to_string(parts.diag.at(i, i)));
        }
    }
    BandedMatrix S = assemble_S(sys.B);
    BandedMatrix Q = band_combine(1.0, BandedMatrix::identity(n), 1.0, S);
    return {std::move(S), std::move(Q), std::move(QB), std::move(parts)};
}

/// v + S v without forming Q.
inline PointStack apply_Q(const BandedMatrix& S, const PointStack& v) {
    if (S.order() != v.rows()) throw Error(Errc::DimensionMismatch, "apply_Q length mismatch");
    PointStack y = v;
    const std::size_t n = v.rows();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double s = S.at(i, i + 1);
        if (s == 0.0) continue;
        auto yi = y.row(i);
        const auto vn = v.row(i + 1);
        for (std::size_t k = 0; k < yi.size(); ++k) yi[k] += s * vn[k];
    }
    return y;
}

/// Closed-form inverse of Q = I + S.
///
/// Q is unit upper bidiagonal with super-diagonal -c_r, so its inverse is
/// upper triangular with X(i, j) = c_i c_{i+1} ... c_{j-1} >= 0.
inline Eigen::MatrixXd preconditioner_inverse(const BandedMatrix& S) {
    const auto n = static_cast<Eigen::Index>(S.order());
    Eigen::MatrixXd X = Eigen::MatrixXd::Identity(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double prod = 1.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            prod *= -S.at(static_cast<std::size_t>(j - 1), static_cast<std::size_t>(j));
            X(i, j) = prod;
        }
    }
    return X;
}

}  // namespace pgim
