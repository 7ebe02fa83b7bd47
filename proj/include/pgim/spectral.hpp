#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pgim/banded.hpp"
#include "pgim/error.hpp"

namespace pgim {

/// Largest order that is densified for a full eigensolve.
inline constexpr std::size_t max_dense_order = 2500;

/// y = A x for an implicit square operator.
using LinearOperator = std::function<void(std::span<const double> x, std::span<double> y)>;

enum class SpectralMode { dense_eig, power_iteration };

struct PowerOptions {
    std::size_t max_iterations = 5000;
    double tolerance = 1e-10;  ///< on ||A x - lambda x|| / ||A x||
};

struct SpectralEstimate {
    double rho = 0.0;
    double residual = 0.0;       ///< 0 for dense solves
    std::size_t iterations = 0;  ///< 0 for dense solves
};

inline LinearOperator as_operator(const BandedMatrix& A) {
    return [&A](std::span<const double> x, std::span<double> y) {
        for (std::size_t i = 0; i < A.order(); ++i) {
            double s = 0.0;
            for (std::size_t j = A.row_begin(i); j < A.row_end(i); ++j) s += A.at(i, j) * x[j];
            y[i] = s;
        }
    };
}

/// Materializes an operator column by column.
inline Eigen::MatrixXd densify(const LinearOperator& op, std::size_t n) {
    if (n > max_dense_order) {
        throw Error(Errc::SizeTooLargeForDense, "order " + std::to_string(n) + " exceeds dense limit");
    }
    const auto N = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd A(N, N);
    std::vector<double> e(n, 0.0);
    std::vector<double> col(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        e[j] = 1.0;
        op(e, col);
        for (std::size_t i = 0; i < n; ++i) A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i];
        e[j] = 0.0;
    }
    return A;
}

/// All eigenvalues of a dense real matrix (Hessenberg reduction + shifted QR).
inline Eigen::VectorXcd dense_eigenvalues(const Eigen::MatrixXd& A) {
    if (static_cast<std::size_t>(A.rows()) > max_dense_order) {
        throw Error(Errc::SizeTooLargeForDense, "order " + std::to_string(A.rows()) + " exceeds dense limit");
    }
    if (A.rows() == 0) return {};
    Eigen::EigenSolver<Eigen::MatrixXd> solver(A, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw Error(Errc::InvalidArgument, "dense eigensolver did not converge");
    }
    return solver.eigenvalues();
}

/// Power iteration with a Rayleigh-quotient estimate.
///
/// Starts from the alternating vector (1, -1, 1, ...). Throws
/// PowerIterationStalled when the residual stays above tolerance, which
/// usually means a complex dominant pair or a non-dominant spectrum.
inline SpectralEstimate power_iteration(const LinearOperator& op, std::size_t n, const PowerOptions& opts = {}) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = i % 2 == 0 ? 1.0 : -1.0;
    const double inv = 1.0 / std::sqrt(static_cast<double>(n));
    for (double& v : x) v *= inv;

    std::vector<double> y(n, 0.0);
    double residual = std::numeric_limits<double>::infinity();
    double lambda = 0.0;
    for (std::size_t it = 1; it <= opts.max_iterations; ++it) {
        op(x, y);
        double ynorm2 = 0.0;
        lambda = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            lambda += x[i] * y[i];
            ynorm2 += y[i] * y[i];
        }
        const double ynorm = std::sqrt(ynorm2);
        if (ynorm == 0.0) return {0.0, 0.0, it};
        double r2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = y[i] - lambda * x[i];
            r2 += r * r;
        }
        residual = std::sqrt(r2) / ynorm;
        if (residual <= opts.tolerance) return {std::abs(lambda), residual, it};
        for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / ynorm;
    }
    throw Error(Errc::PowerIterationStalled, "residual " + std::to_string(residual) + " after " +
                                                 std::to_string(opts.max_iterations) + " iterations (estimate " +
                                                 std::to_string(std::abs(lambda)) + ")");
}

inline SpectralEstimate spectral_radius(const LinearOperator& op, std::size_t n,
                                        SpectralMode mode = SpectralMode::dense_eig, const PowerOptions& opts = {}) {
    if (mode == SpectralMode::power_iteration) return power_iteration(op, n, opts);
    const Eigen::VectorXcd ev = dense_eigenvalues(densify(op, n));
    double rho = 0.0;
    for (const auto& l : ev) rho = std::max(rho, std::abs(l));
    return {rho, 0.0, 0};
}

inline SpectralEstimate spectral_radius(const BandedMatrix& A, SpectralMode mode = SpectralMode::dense_eig,
                                        const PowerOptions& opts = {}) {
    if (mode == SpectralMode::dense_eig) {
        if (A.order() > max_dense_order) {
            throw Error(Errc::SizeTooLargeForDense, "order " + std::to_string(A.order()) + " exceeds dense limit");
        }
        const Eigen::VectorXcd ev = dense_eigenvalues(A.to_dense());
        double rho = 0.0;
        for (const auto& l : ev) rho = std::max(rho, std::abs(l));
        return {rho, 0.0, 0};
    }
    return power_iteration(as_operator(A), A.order(), opts);
}

struct ModulusExtrema {
    double min_modulus = 0.0;
    double max_modulus = 0.0;
    bool real_spectrum = true;  ///< false if any eigenvalue has a nonnegligible imaginary part
};

/// Smallest and largest eigenvalue moduli from a full dense eigensolve.
inline ModulusExtrema eig_extrema_modulus(const Eigen::MatrixXd& A) {
    const Eigen::VectorXcd ev = dense_eigenvalues(A);
    ModulusExtrema out{std::numeric_limits<double>::infinity(), 0.0, true};
    for (const auto& l : ev) {
        const double m = std::abs(l);
        out.min_modulus = std::min(out.min_modulus, m);
        out.max_modulus = std::max(out.max_modulus, m);
        if (std::abs(l.imag()) > 1e-12 * std::max(1.0, m)) out.real_spectrum = false;
    }
    return out;
}

inline ModulusExtrema eig_extrema_modulus(const BandedMatrix& A) {
    if (A.order() > max_dense_order) {
        throw Error(Errc::SizeTooLargeForDense, "order " + std::to_string(A.order()) + " exceeds dense limit");
    }
    return eig_extrema_modulus(A.to_dense());
}

}  // namespace pgim
