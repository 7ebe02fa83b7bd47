// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pgim/bench.hpp"

using namespace pgim;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

MethodConfig method(Family f, bool pre) { return {f, pre, std::nullopt}; }

std::size_t row_of(Family f, bool pre) { return static_cast<std::size_t>(f) * 2 + (pre ? 1 : 0); }

Outcome c1_example4_pia_radius() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto problem = make_problem(example_points(ExampleId::spatial_circular));
    const double rho = iteration_spectral_radius(problem, method(Family::richardson, false));
    const double secs = seconds_since(t0);
    std::ostringstream d;
    d << "rho(PIA)=" << rho << " target 0.6666+-0.01, " << secs << " s (limit 30)";
    return {std::abs(rho - 0.6666) <= 0.01 && secs < 30.0, d.str()};
}

Outcome c2_spectral_orderings() {
    std::vector<SpectraColumn> cols;
    for (ExampleId id : all_examples) cols.push_back({id, id == ExampleId::spherical_cardioid ? 1000 : default_spec(id).n});
    const SpectraReport r = compute_spectra(cols, all_methods());
    std::size_t violations = 0;
    std::ostringstream d;
    auto require_less = [&](Family fa, bool pa, Family fb, bool pb, std::size_t c) {
        const double a = r.rho[row_of(fa, pa)][c];
        const double b = r.rho[row_of(fb, pb)][c];
        if (!(a < b)) {
            ++violations;
            d << " [" << cols[c].label() << ": " << method(fa, pa).name() << "=" << a << " !< " << method(fb, pb).name()
              << "=" << b << "]";
        }
    };
    double max_dev = 0.0;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        for (Family f : all_families) require_less(f, true, f, false, c);
        for (bool pre : {false, true}) {
            require_less(Family::sor, pre, Family::gauss_seidel, pre, c);
            require_less(Family::gauss_seidel, pre, Family::jacobi, pre, c);
        }
        for (std::size_t m = 0; m < r.methods.size(); ++m) {
            if (auto ref = reference_spectral_radius(r.methods[m], cols[c].id, cols[c].n)) {
                max_dev = std::max(max_dev, std::abs(r.rho[m][c] - *ref));
            }
        }
    }
    std::ostringstream head;
    head << violations << " ordering violations over 6 examples; max |rho - published| = " << max_dev
         << " (informational)" << d.str();
    return {violations == 0, head.str()};
}

Outcome c3_cardioid_iteration_counts() {
    const auto t0 = std::chrono::steady_clock::now();
    BenchOptions opts;
    opts.repeats = 1;
    const auto cells = run_bench(ExampleId::spherical_cardioid, {1000}, {1e-10}, all_methods(), opts);
    const double secs = seconds_since(t0);
    auto k = [&](Family f, bool pre) { return cells[row_of(f, pre)].iterations; };
    bool pass = secs < 120.0;
    std::ostringstream d;
    for (Family f : {Family::richardson, Family::gauss_seidel, Family::jacobi}) {
        const std::size_t kp = k(f, true);
        const std::size_t ku = k(f, false);
        const std::size_t rp = *reference_iterations(method(f, true), 1000, 1e-10);
        const std::size_t ru = *reference_iterations(method(f, false), 1000, 1e-10);
        const bool order = kp < ku;
        const bool near = std::abs(static_cast<long>(kp) - static_cast<long>(rp)) <= 5 &&
                          std::abs(static_cast<long>(ku) - static_cast<long>(ru)) <= 5;
        pass = pass && order && near;
        d << method(f, true).name() << "/" << method(f, false).name() << "=" << kp << "/" << ku << " (target " << rp
          << "/" << ru << "+-5, order " << (order ? "ok" : "violated") << "); ";
    }
    for (const auto& c : cells) pass = pass && c.converged;
    d << secs << " s (limit 120)";
    return {pass, d.str()};
}

Outcome c4_direct_solve_equivalence() {
    oracle::Rng rng(2024);
    const double tol = 1e-10;
    std::size_t failures = 0;
    std::size_t within_residual_bound = 0;
    double worst = 0.0;
    double worst_direct = 0.0;
    double max_inverse_norm = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = oracle::uniform_size(rng, 4, 100);
        const auto params = oracle::random_params(rng, n);
        const PointSet points(oracle::random_points(rng, n, trial % 2 ? 3 : 2));
        const auto problem = make_problem(points, params);

        const auto p = oracle::from_stack(points.stack());
        const auto B = oracle::from_band(problem.system.B);
        const auto xb = oracle::solve(B, p);
        const auto xq = oracle::solve(oracle::from_band(problem.preconditioned.QB),
                                      oracle::mul(oracle::from_band(problem.preconditioned.Q), p));
        const double direct = oracle::max_abs_diff(xb, xq);
        worst_direct = std::max(worst_direct, direct);
        if (direct > 1e-10) ++failures;

        // ||B^{-1}||_inf turns a residual of eps into an error bound of ||B^{-1}|| eps.
        double inverse_norm = 0.0;
        for (const auto& row : oracle::inverse(B)) {
            double s = 0.0;
            for (double v : row) s += std::abs(v);
            inverse_norm = std::max(inverse_norm, s);
        }
        max_inverse_norm = std::max(max_inverse_norm, inverse_norm);

        SolveOptions opts;
        opts.tolerance = tol;
        for (const auto& m : all_methods()) {
            const auto res = solve(problem, m, opts);
            const auto x = oracle::from_stack(res.solution);
            const double err = std::max(oracle::max_abs_diff(x, xb), oracle::max_abs_diff(x, xq));
            worst = std::max(worst, err);
            if (!res.trace.converged || err > 10.0 * tol) {
                ++failures;
                if (res.trace.converged && err <= inverse_norm * res.trace.errors.back() + 1e-14) ++within_residual_bound;
            }
        }
    }
    std::ostringstream d;
    d << "200 instances x 10 methods, tol " << tol << ": " << failures << " failures; worst |x - x_direct| = " << worst
      << " (limit " << 10.0 * tol << "), worst direct disagreement " << worst_direct << "; " << within_residual_bound
      << " failures converged and lie within ||B^-1||*eps (max ||B^-1|| = " << max_inverse_norm << ")";
    return {failures == 0, d.str()};
}

Outcome c5_preconditioned_structure() {
    oracle::Rng rng(5);
    std::size_t failures = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = oracle::uniform_size(rng, 4, 40);
        const auto sys = assemble_B(oracle::random_params(rng, n));
        const auto pre = assemble_QB_closed(sys);
        bool ok = true;
        for (std::size_t i = 0; i < n; ++i) ok = ok && pre.parts.diag.get(i, i) > 0.0;
        const auto cmp = oracle::from_band(comparison_matrix(pre.QB));
        oracle::Dense J = oracle::zeros(n, n);
        for (std::size_t i = 0; i < n; ++i) J[i][i] = i % 2 ? -1.0 : 1.0;
        ok = ok && oracle::max_abs_diff(cmp, oracle::mul(oracle::mul(J, oracle::from_band(pre.QB)), J)) <= 1e-14;
        for (const auto& row : oracle::inverse(cmp)) {
            for (double v : row) ok = ok && v >= -1e-10;
        }
        const Eigen::MatrixXd X = preconditioner_inverse(pre.S);
        oracle::Dense Xd = oracle::zeros(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) Xd[i][j] = X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
        ok = ok && oracle::max_abs_diff(oracle::mul(oracle::from_band(pre.Q), Xd), oracle::eye(n)) <= 1e-12;
        if (!ok) ++failures;
    }
    return {failures == 0, std::to_string(failures) + " of 100 systems violate a structural property"};
}

Outcome c6_closed_form_product() {
    oracle::Rng rng(6);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = oracle::uniform_size(rng, 4, 50);
        const auto sys = assemble_B(oracle::random_params(rng, n));
        const auto pre = assemble_QB_closed(sys);
        worst = std::max(worst, oracle::max_abs_diff(oracle::from_band(pre.QB), oracle::from_band(band_mul(pre.Q, sys.B))));
    }
    std::ostringstream d;
    d << "max |QB_closed - band_mul(Q, B)| = " << worst << " over 100 systems (limit 1e-14)";
    return {worst <= 1e-14, d.str()};
}

Outcome c7_asymptotic_rate() {
    SolveOptions opts;
    opts.tolerance = 1e-12;
    opts.max_iterations = 100000;
    bool pass = true;
    std::ostringstream d;
    for (ExampleId id : {ExampleId::duck, ExampleId::butterfly, ExampleId::chrysanthemum}) {
        const auto problem = make_problem(example_points(id));
        for (const auto& m : {method(Family::richardson, false), method(Family::richardson, true),
                              method(Family::jacobi, false), method(Family::jacobi, true)}) {
            const double rho = iteration_spectral_radius(problem, m);
            const auto res = solve(problem, m, opts);
            const double rate = contraction_rate(res.trace, 10);
            const bool ok = std::abs(rate - rho) <= 0.05;
            pass = pass && ok;
            if (!ok) d << to_string(id) << " " << m.name() << ": rate " << rate << " vs rho " << rho << "; ";
        }
    }
    if (pass) d << "12 cells within 0.05";
    return {pass, d.str()};
}

Outcome c8_omega_one_degeneracy() {
    const auto problem = make_problem(duck_points());
    const PointStack& p = problem.points.stack();
    double worst = 0.0;
    for (bool pre : {false, true}) {
        const std::pair<Family, Family> pairs[] = {{Family::weighted_richardson, Family::richardson},
                                                   {Family::sor, Family::gauss_seidel}};
        for (const auto& [relaxed, base] : pairs) {
            const Splitting a(problem, relaxed, pre, 1.0);
            const Splitting b(problem, base, pre, 1.0);
            const PointStack rhs = a.rhs(p);
            PointStack xa = p;
            PointStack xb = p;
            for (int k = 0; k < 200; ++k) {
                xa = a.step(xa, p, rhs);
                xb = b.step(xb, p, rhs);
                worst = std::max(worst, max_abs_diff(xa, xb));
            }
        }
    }
    std::ostringstream d;
    d << "max per-iterate difference over 200 sweeps x 4 pairs = " << worst << " (limit 1e-15)";
    return {worst <= 1e-15, d.str()};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"1 spectral radius, spatial circular PIA", c1_example4_pia_radius},
        {"2 preconditioned and family orderings", c2_spectral_orderings},
        {"3 cardioid iteration counts", c3_cardioid_iteration_counts},
        {"4 agreement with direct solves", c4_direct_solve_equivalence},
        {"5 preconditioned-system structure", c5_preconditioned_structure},
        {"6 closed-form QB", c6_closed_form_product},
        {"7 asymptotic contraction rate", c7_asymptotic_rate},
        {"8 omega = 1 degeneracy", c8_omega_one_degeneracy},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
