// pgim: command-line front end for cubic B-spline iterative interpolation.
//
//   pgim solve   --example duck --method gs --precondition --out trace.csv
//   pgim spectra --out spectra.csv
//   pgim bench   --n 1000 --n 2000 --out bench.csv
//   pgim gen     --example rose3d --out rose.csv
//
// Exit status: 0 success, 1 usage or input error, 2 solve did not converge.

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pgim/bench.hpp"
#include "pgim/datasets.hpp"
#include "pgim/io.hpp"
#include "pgim/solvers.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_not_converged = 2;

struct SourceOptions {
    std::string example;
    std::string input;
    std::optional<std::size_t> n;
    std::string cardioid_z = "reciprocal";
};

struct Loaded {
    pgim::PointSet points;
    std::string label;
};

pgim::CardioidZ parse_cardioid_z(const std::string& s) {
    if (s == "reciprocal") return pgim::CardioidZ::reciprocal;
    if (s == "half-angle") return pgim::CardioidZ::half_angle;
    throw pgim::Error(pgim::Errc::InvalidArgument, "unknown cardioid z formula '" + s + "'");
}

pgim::ParamScheme parse_scheme(const std::string& s) {
    if (s == "chord") return pgim::ParamScheme::chord_length;
    if (s == "uniform") return pgim::ParamScheme::uniform;
    throw pgim::Error(pgim::Errc::InvalidArgument, "unknown parameterization '" + s + "'");
}

std::string scheme_name(pgim::ParamScheme s) { return s == pgim::ParamScheme::uniform ? "uniform" : "chord"; }

std::optional<double> parse_omega(const std::string& s) {
    if (s.empty() || s == "auto") return std::nullopt;
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw pgim::Error(pgim::Errc::InvalidArgument, "--omega expects 'auto' or a number, got '" + s + "'");
    }
    pgim::validate_omega(v);
    return v;
}

pgim::ExampleSpec example_spec(const std::string& name, std::optional<std::size_t> n, const std::string& z) {
    const pgim::ExampleId id = pgim::parse_example(name);
    pgim::ExampleSpec spec = pgim::default_spec(id, n);
    spec.cardioid_z = parse_cardioid_z(z);
    return spec;
}

Loaded load_source(const SourceOptions& src) {
    if (src.example.empty() == src.input.empty()) {
        throw pgim::Error(pgim::Errc::InvalidArgument, "give exactly one of --example or --input");
    }
    if (!src.input.empty()) return {pgim::read_points(src.input), "file:" + src.input};
    const pgim::ExampleSpec spec = example_spec(src.example, src.n, src.cardioid_z);
    return {pgim::sample_curve(spec), "example:" + src.example};
}

std::string format_for(const std::string& path, const std::string& forced) {
    if (!forced.empty()) return forced;
    const std::string ext = std::filesystem::path(path).extension().string();
    if (ext == ".csv") return "csv";
    if (ext == ".json") return "json";
    if (ext == ".svg") return "svg";
    throw pgim::Error(pgim::Errc::InvalidArgument, "cannot infer format of '" + path + "'; pass --format");
}

/// Writes to a file, or to stdout for "-" or an empty path.
template <class Writer>
void emit(const std::string& path, Writer&& write) {
    if (path.empty() || path == "-") {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path);
    if (!out) throw pgim::Error(pgim::Errc::IoError, "cannot write '" + path + "'");
    write(out);
    if (!out) throw pgim::Error(pgim::Errc::IoError, "write to '" + path + "' failed");
}

std::vector<pgim::MethodConfig> parse_methods(const std::vector<std::string>& tokens, bool precondition,
                                              std::optional<double> omega) {
    std::vector<pgim::MethodConfig> out;
    if (tokens.empty()) {
        out = pgim::all_methods();
    } else {
        for (const auto& t : tokens) {
            pgim::MethodConfig m = pgim::parse_method(t);
            m.preconditioned = m.preconditioned || precondition;
            out.push_back(m);
        }
    }
    for (auto& m : out) {
        if (m.uses_omega()) m.omega = omega;
    }
    return out;
}

// --- solve -------------------------------------------------------------------

struct SolveArgs {
    SourceOptions src;
    std::string method = "pia";
    bool precondition = false;
    std::string omega = "auto";
    std::string param = "chord";
    double tol = 1e-10;
    std::size_t max_iter = 10000;
    std::vector<std::string> outs;
    std::string format;
    std::string curve_csv;
    std::size_t samples = 0;
    bool control_polygon = false;
};

int run_solve(const SolveArgs& a) {
    if (!(a.tol > 0.0)) throw pgim::Error(pgim::Errc::InvalidArgument, "--tol must be positive");
    if (a.max_iter < 1) throw pgim::Error(pgim::Errc::InvalidArgument, "--max-iter must be at least 1");

    pgim::MethodConfig cfg = pgim::parse_method(a.method);
    cfg.preconditioned = cfg.preconditioned || a.precondition;
    cfg.omega = parse_omega(a.omega);
    const pgim::ParamScheme scheme = parse_scheme(a.param);

    // Resolve every output target before doing any work.
    std::vector<std::pair<std::string, std::string>> targets;
    for (const auto& o : a.outs) targets.emplace_back(o, format_for(o, a.format));
    if (targets.empty()) targets.emplace_back("", a.format.empty() ? "json" : a.format);

    const Loaded data = load_source(a.src);
    const pgim::InterpolationProblem problem = pgim::make_problem(data.points, scheme);
    pgim::SolveOptions opts;
    opts.tolerance = a.tol;
    opts.max_iterations = a.max_iter;
    const pgim::SolveResult result = pgim::solve(problem, cfg, opts);

    pgim::RunInfo info;
    info.source = data.label;
    info.param_scheme = scheme_name(scheme);
    info.method = cfg.name();
    info.preconditioned = cfg.preconditioned;
    info.tolerance = a.tol;
    info.max_iterations = a.max_iter;
    info.points = data.points.size();
    info.dim = data.points.dim();

    const std::size_t m = a.samples ? a.samples : std::max<std::size_t>(200, 10 * data.points.size());
    std::optional<pgim::PointStack> curve;
    auto sampled = [&]() -> const pgim::PointStack& {
        if (!curve) curve = pgim::curve_sample(problem.system.knots, result.control, m);
        return *curve;
    };

    for (const auto& [path, fmt] : targets) {
        if (fmt == "csv") {
            emit(path, [&](std::ostream& o) { pgim::write_trace_csv(o, result.trace); });
        } else if (fmt == "json") {
            emit(path, [&](std::ostream& o) { o << pgim::summary_json(info, result.trace).dump(2) << '\n'; });
        } else if (fmt == "svg") {
            pgim::SvgStyle style;
            style.draw_control_polygon = a.control_polygon;
            emit(path, [&](std::ostream& o) {
                pgim::write_curve_svg(o, sampled(), data.points.stack(), &result.control.stack(), style);
            });
        } else {
            throw pgim::Error(pgim::Errc::InvalidArgument, "unknown format '" + fmt + "'");
        }
    }
    if (!a.curve_csv.empty()) emit(a.curve_csv, [&](std::ostream& o) { pgim::write_points_csv(o, sampled()); });

    if (!result.trace.converged) {
        std::cerr << "not converged: " << cfg.name() << " reached error " << result.trace.errors.back() << " after "
                  << result.trace.iterations << " sweeps (tol " << a.tol << ")\n";
        return exit_not_converged;
    }
    return exit_ok;
}

// --- spectra -----------------------------------------------------------------

struct SpectraArgs {
    std::vector<std::string> examples;
    std::vector<std::size_t> sizes;
    std::vector<std::string> methods;
    bool precondition = false;
    std::string omega = "auto";
    std::string param = "chord";
    std::string cardioid_z = "reciprocal";
    std::string out;
    std::string format;
};

nlohmann::json spectra_json(const pgim::SpectraReport& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t m = 0; m < r.methods.size(); ++m) {
        for (std::size_t c = 0; c < r.columns.size(); ++c) {
            nlohmann::json cell{{"method", r.methods[m].name()},
                                {"example", std::string(pgim::to_string(r.columns[c].id))},
                                {"n", r.columns[c].n},
                                {"rho", r.rho[m][c]}};
            const auto ref = pgim::reference_spectral_radius(r.methods[m], r.columns[c].id, r.columns[c].n);
            if (r.scheme == pgim::ParamScheme::chord_length && ref) {
                cell["ref"] = *ref;
                cell["absdev"] = std::abs(r.rho[m][c] - *ref);
            }
            rows.push_back(std::move(cell));
        }
    }
    return {{"param_scheme", scheme_name(r.scheme)}, {"cells", rows}};
}

int run_spectra(const SpectraArgs& a) {
    const pgim::ParamScheme scheme = parse_scheme(a.param);
    const auto methods = parse_methods(a.methods, a.precondition, parse_omega(a.omega));
    const std::string fmt = a.out.empty() ? (a.format.empty() ? "csv" : a.format) : format_for(a.out, a.format);
    if (fmt != "csv" && fmt != "json") throw pgim::Error(pgim::Errc::InvalidArgument, "spectra writes csv or json");

    std::vector<pgim::SpectraColumn> columns;
    std::vector<pgim::ExampleId> ids;
    if (a.examples.empty()) {
        ids.assign(pgim::all_examples.begin(), pgim::all_examples.end());
    } else {
        for (const auto& e : a.examples) ids.push_back(pgim::parse_example(e));
    }
    for (pgim::ExampleId id : ids) {
        if (id == pgim::ExampleId::spherical_cardioid) {
            const std::vector<std::size_t> ns = a.sizes.empty() ? std::vector<std::size_t>{1000} : a.sizes;
            for (std::size_t n : ns) columns.push_back({id, n});
        } else {
            columns.push_back({id, pgim::default_spec(id).n});
        }
    }
    const pgim::SpectraReport report = pgim::compute_spectra(columns, methods, scheme, parse_cardioid_z(a.cardioid_z));
    emit(a.out, [&](std::ostream& o) {
        if (fmt == "csv") {
            pgim::write_spectra_csv(o, report);
        } else {
            o << spectra_json(report).dump(2) << '\n';
        }
    });
    return exit_ok;
}

// --- bench -------------------------------------------------------------------

struct BenchArgs {
    std::string example = "spherical_cardioid";
    std::vector<std::size_t> sizes;
    std::vector<double> tols;
    std::vector<std::string> methods;
    bool precondition = false;
    std::string omega = "auto";
    std::string param = "chord";
    std::string cardioid_z = "reciprocal";
    std::size_t max_iter = 10000;
    std::size_t repeats = 3;
    std::string out;
    std::string format;
};

nlohmann::json bench_json(const std::vector<pgim::BenchCell>& cells) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& c : cells) {
        nlohmann::json j{{"example", c.example},     {"n", c.n},
                         {"method", c.method.name()}, {"tol", c.tolerance},
                         {"k", c.iterations},         {"converged", c.converged},
                         {"sweep_time_s", c.sweep_seconds}, {"omega_time_s", c.omega_seconds}};
        j["omega"] = c.omega ? nlohmann::json(*c.omega) : nlohmann::json(nullptr);
        j["ref_k"] = c.reference_k ? nlohmann::json(*c.reference_k) : nlohmann::json(nullptr);
        rows.push_back(std::move(j));
    }
    return {{"cells", rows}};
}

int run_bench(const BenchArgs& a) {
    const pgim::ExampleId id = pgim::parse_example(a.example);
    const auto methods = parse_methods(a.methods, a.precondition, parse_omega(a.omega));
    const std::string fmt = a.out.empty() ? (a.format.empty() ? "csv" : a.format) : format_for(a.out, a.format);
    if (fmt != "csv" && fmt != "json") throw pgim::Error(pgim::Errc::InvalidArgument, "bench writes csv or json");
    for (double t : a.tols) {
        if (!(t > 0.0)) throw pgim::Error(pgim::Errc::InvalidArgument, "--tol must be positive");
    }

    std::vector<std::size_t> sizes = a.sizes;
    if (sizes.empty()) sizes.push_back(pgim::default_spec(id).n);
    const std::vector<double> tols = a.tols.empty() ? std::vector<double>{1e-10, 1e-12} : a.tols;

    pgim::BenchOptions opts;
    opts.scheme = parse_scheme(a.param);
    opts.cardioid_z = parse_cardioid_z(a.cardioid_z);
    opts.max_iterations = a.max_iter;
    opts.repeats = a.repeats;

    const std::vector<pgim::BenchCell> cells = pgim::run_bench(id, sizes, tols, methods, opts);
    emit(a.out, [&](std::ostream& o) {
        if (fmt == "csv") {
            pgim::write_bench_csv(o, cells);
        } else {
            o << bench_json(cells).dump(2) << '\n';
        }
    });
    return exit_ok;
}

// --- gen ---------------------------------------------------------------------

struct GenArgs {
    SourceOptions src;
    std::string out;
    std::string format;
};

int run_gen(const GenArgs& a) {
    if (a.src.example.empty()) throw pgim::Error(pgim::Errc::InvalidArgument, "gen needs --example");
    const std::string fmt = a.out.empty() ? (a.format.empty() ? "csv" : a.format) : format_for(a.out, a.format);
    const Loaded data = load_source(a.src);
    emit(a.out, [&](std::ostream& o) {
        if (fmt == "csv") {
            pgim::write_points_csv(o, data.points.stack());
        } else if (fmt == "svg") {
            pgim::write_curve_svg(o, data.points.stack(), data.points.stack());
        } else {
            throw pgim::Error(pgim::Errc::InvalidArgument, "gen writes csv or svg");
        }
    });
    return exit_ok;
}

void add_source_options(CLI::App* cmd, SourceOptions& src) {
    cmd->add_option("--example", src.example, "Built-in dataset")
        ->check(CLI::IsMember({"duck", "butterfly", "chrysanthemum", "spatial_circular", "rose3d",
                               "spherical_cardioid"}));
    cmd->add_option("--n", src.n, "Sample count for parametric examples")->check(CLI::PositiveNumber);
    cmd->add_option("--cardioid-z", src.cardioid_z, "z formula of the spherical cardioid")
        ->check(CLI::IsMember({"reciprocal", "half-angle"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cubic B-spline interpolation by (preconditioned) geometric iterative methods"};
    app.require_subcommand(1);
    bool seed_free = false;
    app.add_flag("--seed-free", seed_free, "Accepted for interface stability; nothing here is random");

    const std::vector<std::string> method_tokens{"pia",  "wpia",  "jacobi",  "gs",  "sor",
                                                 "ppia", "pwpia", "pjacobi", "pgs", "psor"};

    SolveArgs solve_args;
    CLI::App* solve = app.add_subcommand("solve", "Run one method on one dataset");
    add_source_options(solve, solve_args.src);
    solve->add_option("--input", solve_args.src.input, "Points CSV file");
    solve->add_option("--method", solve_args.method, "Iteration method")->check(CLI::IsMember(method_tokens));
    solve->add_flag("--precondition", solve_args.precondition, "Use the Q = I + S preconditioned system");
    solve->add_option("--omega", solve_args.omega, "Relaxation factor: auto or a value in (0, 2)");
    solve->add_option("--param", solve_args.param, "Parameterization")->check(CLI::IsMember({"chord", "uniform"}));
    solve->add_option("--tol", solve_args.tol, "Stopping tolerance on the interpolation error");
    solve->add_option("--max-iter", solve_args.max_iter, "Sweep budget");
    solve->add_option("--out", solve_args.outs, "Output file(s); format from extension unless --format");
    solve->add_option("--format", solve_args.format, "Output format")->check(CLI::IsMember({"csv", "json", "svg"}));
    solve->add_option("--curve-csv", solve_args.curve_csv, "Write the sampled curve as points CSV");
    solve->add_option("--samples", solve_args.samples, "Curve sample count for svg/curve output");
    solve->add_flag("--control-polygon", solve_args.control_polygon, "Draw the control polygon in svg output");
    solve->add_flag("--seed-free", seed_free, "No-op");

    SpectraArgs spectra_args;
    CLI::App* spectra = app.add_subcommand("spectra", "Spectral radii of every method's iteration matrix");
    spectra->add_option("--example", spectra_args.examples, "Dataset column(s); default all six");
    spectra->add_option("--n", spectra_args.sizes, "Cardioid size(s); default 1000");
    spectra->add_option("--method", spectra_args.methods, "Method row(s); default all ten")
        ->check(CLI::IsMember(method_tokens));
    spectra->add_flag("--precondition", spectra_args.precondition, "Precondition every listed method");
    spectra->add_option("--omega", spectra_args.omega, "Relaxation factor: auto or a value in (0, 2)");
    spectra->add_option("--param", spectra_args.param, "Parameterization")->check(CLI::IsMember({"chord", "uniform"}));
    spectra->add_option("--cardioid-z", spectra_args.cardioid_z, "z formula of the spherical cardioid")
        ->check(CLI::IsMember({"reciprocal", "half-angle"}));
    spectra->add_option("--out", spectra_args.out, "Output file; stdout if omitted");
    spectra->add_option("--format", spectra_args.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    spectra->add_flag("--seed-free", seed_free, "No-op");

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "Iteration counts and timings over sizes and tolerances");
    bench->add_option("--example", bench_args.example, "Dataset; default spherical_cardioid");
    bench->add_option("--n", bench_args.sizes, "Size(s); default the dataset's own");
    bench->add_option("--tol", bench_args.tols, "Tolerance(s); default 1e-10 and 1e-12");
    bench->add_option("--method", bench_args.methods, "Method(s); default all ten")->check(CLI::IsMember(method_tokens));
    bench->add_flag("--precondition", bench_args.precondition, "Precondition every listed method");
    bench->add_option("--omega", bench_args.omega, "Relaxation factor: auto or a value in (0, 2)");
    bench->add_option("--param", bench_args.param, "Parameterization")->check(CLI::IsMember({"chord", "uniform"}));
    bench->add_option("--cardioid-z", bench_args.cardioid_z, "z formula of the spherical cardioid")
        ->check(CLI::IsMember({"reciprocal", "half-angle"}));
    bench->add_option("--max-iter", bench_args.max_iter, "Sweep budget per cell");
    bench->add_option("--repeats", bench_args.repeats, "Timed runs per cell; the median is reported")
        ->check(CLI::PositiveNumber);
    bench->add_option("--out", bench_args.out, "Output file; stdout if omitted");
    bench->add_option("--format", bench_args.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    bench->add_flag("--seed-free", seed_free, "No-op");

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "Dump a built-in dataset as points CSV");
    add_source_options(gen, gen_args.src);
    gen->add_option("--out", gen_args.out, "Output file; stdout if omitted");
    gen->add_option("--format", gen_args.format, "Output format")->check(CLI::IsMember({"csv", "svg"}));
    gen->add_flag("--seed-free", seed_free, "No-op");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (solve->parsed()) return run_solve(solve_args);
        if (spectra->parsed()) return run_spectra(spectra_args);
        if (bench->parsed()) return run_bench(bench_args);
        if (gen->parsed()) return run_gen(gen_args);
    } catch (const pgim::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}
