/**
 * @file solvers.hpp
 * @brief Geometric iterative methods as stationary splittings of B or QB.
 *
 * Every method solves A x = b with either (A, b) = (B, p) or, when
 * preconditioned, (A, b) = (QB, Q p), through the splitting A = M - N:
 *
 *   richardson           M = I                  (PIA / PPIA)
 *   weighted_richardson  M = I / omega          (WPIA / PWPIA)
 *   jacobi               M = D                  (Jacobi-PIA / PJacobi-PIA)
 *   gauss_seidel         M = D - L              (GS-PIA / PGS-PIA)
 *   sor                  M = (D - omega L)/omega (SOR-PIA / PSOR-PIA)
 *
 * with A = D - L - U. Richardson and Jacobi sweeps are applied in residual
 * form x + W Q (p - B x), so the preconditioned variants never form QB.
 * Gauss-Seidel and SOR sweeps run in ascending row order through a banded
 * forward substitution.
 *
 * The interpolation error of the current curve at the sites is
 * max_i |p_i - (B x)_i|, which equals max_i |p_i - C(t_i)|.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pgim/banded.hpp"
#include "pgim/bspline.hpp"
#include "pgim/collocation.hpp"
#include "pgim/error.hpp"
#include "pgim/points.hpp"
#include "pgim/spectral.hpp"

namespace pgim {

enum class Family { richardson, weighted_richardson, jacobi, gauss_seidel, sor };

inline constexpr std::array<Family, 5> all_families{Family::richardson, Family::weighted_richardson, Family::jacobi,
                                                    Family::gauss_seidel, Family::sor};

struct MethodConfig {
    Family family = Family::richardson;
    bool preconditioned = false;
    std::optional<double> omega;  ///< nullopt resolves automatically

    [[nodiscard]] bool uses_omega() const noexcept {
        return family == Family::weighted_richardson || family == Family::sor;
    }

    /// Short CLI token: pia, wpia, jacobi, gs, sor (prefixed with p when preconditioned).
    [[nodiscard]] std::string token() const {
        std::string base;
        switch (family) {
        case Family::richardson: base = "pia"; break;
        case Family::weighted_richardson: base = "wpia"; break;
        case Family::jacobi: base = "jacobi"; break;
        case Family::gauss_seidel: base = "gs"; break;
        case Family::sor: base = "sor"; break;
        }
        return preconditioned ? "p" + base : base;
    }

    /// Display name, e.g. "PGS-PIA".
    [[nodiscard]] std::string name() const {
        std::string base;
        switch (family) {
        case Family::richardson: base = "PIA"; break;
        case Family::weighted_richardson: base = "WPIA"; break;
        case Family::jacobi: base = "Jacobi-PIA"; break;
        case Family::gauss_seidel: base = "GS-PIA"; break;
        case Family::sor: base = "SOR-PIA"; break;
        }
        return preconditioned ? "P" + base : base;
    }
};

/// Parses pia|wpia|jacobi|gs|sor and their p-prefixed preconditioned forms.
inline MethodConfig parse_method(std::string_view token) {
    MethodConfig cfg;
    std::string t(token);
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    auto base_of = [](std::string_view s) -> std::optional<Family> {
        if (s == "pia") return Family::richardson;
        if (s == "wpia") return Family::weighted_richardson;
        if (s == "jacobi") return Family::jacobi;
        if (s == "gs") return Family::gauss_seidel;
        if (s == "sor") return Family::sor;
        return std::nullopt;
    };
    if (auto f = base_of(t)) {
        cfg.family = *f;
        return cfg;
    }
    if (t.size() > 1 && t.front() == 'p') {
        if (auto f = base_of(std::string_view(t).substr(1))) {
            cfg.family = *f;
            cfg.preconditioned = true;
            return cfg;
        }
    }
    throw Error(Errc::InvalidArgument, "unknown method '" + std::string(token) + "'");
}

inline void validate_omega(double omega) {
    if (!(omega > 0.0 && omega < 2.0)) {
        throw Error(Errc::OmegaOutOfRange, "omega = " + std::to_string(omega) + " not in (0, 2)");
    }
}

/// Assembled plain and preconditioned systems for one point set.
struct InterpolationProblem {
    PointSet points;
    CollocationSystem system;
    PreconditionedSystem preconditioned;

    [[nodiscard]] std::size_t size() const noexcept { return points.size(); }
};

inline InterpolationProblem make_problem(const PointSet& points, const ParameterVector& params) {
    if (params.size() != points.size()) throw Error(Errc::DimensionMismatch, "one parameter per point required");
    CollocationSystem sys = assemble_B(params);
    PreconditionedSystem pre = assemble_QB_closed(sys);
    return {points, std::move(sys), std::move(pre)};
}

inline InterpolationProblem make_problem(const PointSet& points, ParamScheme scheme = ParamScheme::chord_length) {
    return make_problem(points, parameterize(points, scheme));
}

/// One configured splitting with the relaxation factor already fixed.
///
/// `step` performs x <- M^{-1}(N x + b); `apply_M_inverse` and `apply_N`
/// expose the two factors separately.
class Splitting {
public:
    Splitting(const InterpolationProblem& problem, Family family, bool preconditioned, double omega)
        : problem_(&problem), family_(family), preconditioned_(preconditioned), omega_(omega) {
        validate_omega(omega);
        const BandedMatrix& A = preconditioned ? problem.preconditioned.QB : problem.system.B;
        const SplitParts own = preconditioned ? SplitParts{} : split_parts(A);
        const SplitParts& parts = preconditioned ? problem.preconditioned.parts : own;
        diag_.resize(A.order());
        for (std::size_t i = 0; i < A.order(); ++i) diag_[i] = parts.diag.at(i, i);
        if (family == Family::gauss_seidel || family == Family::sor) {
            sweep_lower_ = band_combine(1.0, parts.diag, -omega, parts.lower);
            sweep_upper_ = band_combine(1.0 - omega, parts.diag, omega, parts.upper);
        }
    }

    [[nodiscard]] Family family() const noexcept { return family_; }
    [[nodiscard]] bool preconditioned() const noexcept { return preconditioned_; }
    [[nodiscard]] double omega() const noexcept { return omega_; }

    [[nodiscard]] const BandedMatrix& matrix() const noexcept {
        return preconditioned_ ? problem_->preconditioned.QB : problem_->system.B;
    }

    /// b = p or Q p.
    [[nodiscard]] PointStack rhs(const PointStack& p) const {
        return preconditioned_ ? apply_Q(problem_->preconditioned.S, p) : p;
    }

    /// One sweep. `b` must come from rhs(p); `p` is the raw data.
    [[nodiscard]] PointStack step(const PointStack& x, const PointStack& p, const PointStack& b) const {
        switch (family_) {
        case Family::richardson:
        case Family::weighted_richardson:
        case Family::jacobi: {
            // x + omega W Q (p - B x) with W = I or D^{-1}
            PointStack r = residual(x, p);
            if (preconditioned_) r = apply_Q(problem_->preconditioned.S, r);
            PointStack y = x;
            const bool scale_by_diag = family_ == Family::jacobi;
            for (std::size_t i = 0; i < y.rows(); ++i) {
                const double w = scale_by_diag ? 1.0 / diag_[i] : omega_;
                auto yi = y.row(i);
                const auto ri = r.row(i);
                for (std::size_t k = 0; k < yi.size(); ++k) yi[k] += w * ri[k];
            }
            return y;
        }
        case Family::gauss_seidel:
        case Family::sor: {
            PointStack t = band_matvec(sweep_upper_, x);
            auto td = t.data();
            const auto bd = b.data();
            for (std::size_t i = 0; i < td.size(); ++i) td[i] += omega_ * bd[i];
            return forward_substitute(sweep_lower_, t);
        }
        }
        return x;
    }

    /// M^{-1} r.
    [[nodiscard]] PointStack apply_M_inverse(const PointStack& r) const {
        PointStack y = r;
        switch (family_) {
        case Family::richardson:
        case Family::weighted_richardson:
            for (double& v : y.data()) v *= omega_;
            return y;
        case Family::jacobi:
            for (std::size_t i = 0; i < y.rows(); ++i) {
                for (double& v : y.row(i)) v /= diag_[i];
            }
            return y;
        case Family::gauss_seidel:
        case Family::sor:
            y = forward_substitute(sweep_lower_, r);
            for (double& v : y.data()) v *= omega_;
            return y;
        }
        return y;
    }

    /// N x = M x - A x.
    [[nodiscard]] PointStack apply_N(const PointStack& x) const {
        PointStack y;
        switch (family_) {
        case Family::richardson:
        case Family::weighted_richardson:
            y = x;
            for (double& v : y.data()) v /= omega_;
            break;
        case Family::jacobi:
            y = x;
            for (std::size_t i = 0; i < y.rows(); ++i) {
                for (double& v : y.row(i)) v *= diag_[i];
            }
            break;
        case Family::gauss_seidel:
        case Family::sor:
            y = band_matvec(sweep_lower_, x);
            for (double& v : y.data()) v /= omega_;
            break;
        }
        const PointStack ax = band_matvec(matrix(), x);
        auto yd = y.data();
        const auto ad = ax.data();
        for (std::size_t i = 0; i < yd.size(); ++i) yd[i] -= ad[i];
        return y;
    }

    /// The iteration matrix M^{-1} N as an implicit operator on R^n.
    [[nodiscard]] LinearOperator iteration_operator() const {
        return [this](std::span<const double> x, std::span<double> y) {
            const std::size_t n = x.size();
            PointStack xs(n, 1);
            std::copy(x.begin(), x.end(), xs.data().begin());
            const PointStack zero(n, 1, 0.0);
            const PointStack out = homogeneous_step(xs, zero);
            std::copy(out.data().begin(), out.data().end(), y.begin());
        };
    }

private:
    [[nodiscard]] PointStack homogeneous_step(const PointStack& x, const PointStack& zero) const {
        return step(x, zero, zero);
    }

    [[nodiscard]] PointStack residual(const PointStack& x, const PointStack& p) const {
        PointStack r = band_matvec(problem_->system.B, x);
        auto rd = r.data();
        const auto pd = p.data();
        for (std::size_t i = 0; i < rd.size(); ++i) rd[i] = pd[i] - rd[i];
        return r;
    }

    const InterpolationProblem* problem_;
    Family family_;
    bool preconditioned_;
    double omega_;
    std::vector<double> diag_;
    BandedMatrix sweep_lower_;  ///< D - omega L
    BandedMatrix sweep_upper_;  ///< (1 - omega) D + omega U
};

/// max_i |p_i - (B x)_i|.
inline double interpolation_error(const BandedMatrix& B, const PointStack& x, const PointStack& p) {
    const PointStack bx = band_matvec(B, x);
    double best = 0.0;
    for (std::size_t i = 0; i < p.rows(); ++i) {
        double s = 0.0;
        const auto pi = p.row(i);
        const auto bi = bx.row(i);
        for (std::size_t k = 0; k < pi.size(); ++k) {
            const double d = pi[k] - bi[k];
            s += d * d;
        }
        best = std::max(best, s);
    }
    return std::sqrt(best);
}

struct WeightedOmega {
    double omega;
    ModulusExtrema extrema;
};

/// omega = 2 / (min |lambda| + max |lambda|) over the spectrum of A.
inline WeightedOmega optimal_omega_weighted(const BandedMatrix& A) {
    const ModulusExtrema ext = eig_extrema_modulus(A);
    const double sum = ext.min_modulus + ext.max_modulus;
    if (!(sum > 0.0)) throw Error(Errc::DegenerateSpectrum, "spectrum moduli sum to zero");
    return {2.0 / sum, ext};
}

/// omega = 2 / (1 + sqrt(1 - rho^2)) for the Jacobi spectral radius rho.
inline double optimal_omega_sor(double jacobi_rho) {
    if (!(jacobi_rho >= 0.0 && jacobi_rho < 1.0)) {
        throw Error(Errc::RhoOutOfRange, "Jacobi spectral radius " + std::to_string(jacobi_rho) + " not in [0, 1)");
    }
    return 2.0 / (1.0 + std::sqrt(1.0 - jacobi_rho * jacobi_rho));
}

/// Spectral radius of an operator: dense eigensolve up to max_dense_order, power iteration beyond.
inline SpectralEstimate operator_spectral_radius(const LinearOperator& op, std::size_t n) {
    return spectral_radius(op, n, n <= max_dense_order ? SpectralMode::dense_eig : SpectralMode::power_iteration);
}

struct OmegaResolution {
    std::optional<double> omega;  ///< nullopt for families without a relaxation factor
    double seconds = 0.0;         ///< eigen-computation time
};

/// Fixes omega for a configuration: explicit values are validated,
/// automatic ones come from the optimal-omega formulas.
inline OmegaResolution resolve_omega(const InterpolationProblem& problem, const MethodConfig& cfg) {
    if (cfg.omega) validate_omega(*cfg.omega);
    if (!cfg.uses_omega()) return {};
    if (cfg.omega) return {cfg.omega, 0.0};
    const auto start = std::chrono::steady_clock::now();
    double omega = 1.0;
    if (cfg.family == Family::weighted_richardson) {
        omega = optimal_omega_weighted(cfg.preconditioned ? problem.preconditioned.QB : problem.system.B).omega;
    } else {
        const Splitting jacobi(problem, Family::jacobi, cfg.preconditioned, 1.0);
        omega = optimal_omega_sor(operator_spectral_radius(jacobi.iteration_operator(), problem.size()).rho);
    }
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    return {omega, dt.count()};
}

/// Builds the splitting for a configuration whose omega is already resolved.
inline Splitting splitting_parts(const InterpolationProblem& problem, const MethodConfig& cfg) {
    if (cfg.uses_omega() && !cfg.omega) throw Error(Errc::MissingOmega, cfg.name() + " needs a resolved omega");
    const double omega = cfg.uses_omega() ? *cfg.omega : 1.0;
    return Splitting(problem, cfg.family, cfg.preconditioned, omega);
}

struct IterationTrace {
    double initial_error = 0.0;  ///< error of the starting curve
    std::vector<double> errors;  ///< errors[k - 1] is the error after sweep k
    std::size_t iterations = 0;
    bool converged = false;
    std::optional<double> omega_used;
    double contraction_estimate = std::numeric_limits<double>::quiet_NaN();
    double elapsed = 0.0;        ///< sweep time in seconds
    double omega_seconds = 0.0;  ///< omega resolution time in seconds
};

struct SolveResult {
    PointStack solution;     ///< the n solved control points p_1 .. p_n
    ControlPolygon control;  ///< n + 2 control points with the end points repeated
    IterationTrace trace;
};

struct SolveOptions {
    double tolerance = 1e-10;
    std::size_t max_iterations = 10000;
    std::optional<PointStack> initial;  ///< defaults to the data points
    std::size_t contraction_window = 10;
};

/// Geometric mean of the last `window` consecutive error ratios.
inline double contraction_rate(const IterationTrace& trace, std::size_t window) {
    const auto& e = trace.errors;
    if (window == 0 || e.size() < window + 1) {
        throw Error(Errc::InsufficientHistory, std::to_string(e.size()) + " errors, window " + std::to_string(window));
    }
    const std::size_t last = e.size() - 1;
    double log_sum = 0.0;
    for (std::size_t k = last - window; k < last; ++k) {
        if (e[k] == 0.0 || e[k + 1] == 0.0) throw Error(Errc::ZeroError, "zero error in window");
        log_sum += std::log(e[k + 1] / e[k]);
    }
    return std::exp(log_sum / static_cast<double>(window));
}

inline ControlPolygon embed_control(const PointStack& x) {
    PointStack c(x.rows() + 2, x.dim());
    std::copy(x.row(0).begin(), x.row(0).end(), c.row(0).begin());
    for (std::size_t i = 0; i < x.rows(); ++i) std::copy(x.row(i).begin(), x.row(i).end(), c.row(i + 1).begin());
    std::copy(x.row(x.rows() - 1).begin(), x.row(x.rows() - 1).end(), c.row(x.rows() + 1).begin());
    return ControlPolygon(std::move(c));
}

/// Runs a configured method from the data points until the error drops to
/// the tolerance or the sweep budget is spent. The error is checked after
/// every full sweep; a run that exhausts the budget returns with
/// `converged == false`.
inline SolveResult solve(const InterpolationProblem& problem, const MethodConfig& config, const SolveOptions& opts = {}) {
    if (!(opts.tolerance > 0.0)) throw Error(Errc::InvalidArgument, "tolerance must be positive");
    if (opts.max_iterations < 1) throw Error(Errc::InvalidArgument, "max_iter must be >= 1");

    const OmegaResolution res = resolve_omega(problem, config);
    MethodConfig resolved = config;
    resolved.omega = res.omega;
    const Splitting split = splitting_parts(problem, resolved);

    const PointStack& p = problem.points.stack();
    PointStack x = opts.initial ? *opts.initial : p;
    if (x.rows() != p.rows() || x.dim() != p.dim()) throw Error(Errc::DimensionMismatch, "initial guess shape");

    IterationTrace trace;
    trace.omega_used = res.omega;
    trace.omega_seconds = res.seconds;
    trace.initial_error = interpolation_error(problem.system.B, x, p);

    const auto start = std::chrono::steady_clock::now();
    const PointStack b = split.rhs(p);
    while (trace.iterations < opts.max_iterations) {
        x = split.step(x, p, b);
        ++trace.iterations;
        const double eps = interpolation_error(problem.system.B, x, p);
        trace.errors.push_back(eps);
        if (eps <= opts.tolerance) {
            trace.converged = true;
            break;
        }
    }
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    trace.elapsed = dt.count();
    if (trace.errors.size() > opts.contraction_window) {
        try {
            trace.contraction_estimate = contraction_rate(trace, opts.contraction_window);
        } catch (const Error&) {
            // zero errors leave the estimate undefined
        }
    }
    ControlPolygon control = embed_control(x);
    return {std::move(x), std::move(control), std::move(trace)};
}

inline SolveResult solve(const PointSet& points, const ParameterVector& params, const MethodConfig& config,
                         double tol, std::size_t max_iter) {
    SolveOptions opts;
    opts.tolerance = tol;
    opts.max_iterations = max_iter;
    return solve(make_problem(points, params), config, opts);
}

/// rho(M^{-1} N) for a configured method, omega resolved as in solve().
inline double iteration_spectral_radius(const InterpolationProblem& problem, const MethodConfig& config) {
    MethodConfig resolved = config;
    resolved.omega = resolve_omega(problem, config).omega;
    const Splitting split = splitting_parts(problem, resolved);
    return operator_spectral_radius(split.iteration_operator(), problem.size()).rho;
}

inline double iteration_spectral_radius(const PointSet& points, const ParameterVector& params,
                                        const MethodConfig& config) {
    return iteration_spectral_radius(make_problem(points, params), config);
}

}  // namespace pgim
