/**
 * @file io.hpp
 * @brief Points CSV, trace CSV, curve SVG and the v1 JSON run summary.
 */

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pgim/bspline.hpp"
#include "pgim/error.hpp"
#include "pgim/points.hpp"
#include "pgim/solvers.hpp"

namespace pgim {

inline constexpr std::string_view summary_schema_id = "pgim/solve-summary";
inline constexpr std::string_view summary_schema_version = "v1";

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace detail

/// Parses points CSV: one point per line, 2 or 3 comma-separated decimals.
/// Everything after '#' is ignored, as are blank lines.
inline PointSet parse_points(std::istream& in) {
    PointStack points;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view view(line);
        if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        view = detail::trim(view);
        if (view.empty()) continue;

        std::vector<double> fields;
        while (true) {
            const auto comma = view.find(',');
            const std::string_view field = detail::trim(view.substr(0, comma));
            double v = 0.0;
            const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
            if (field.empty() || res.ec != std::errc{} || res.ptr != field.data() + field.size() || !std::isfinite(v)) {
                throw Error(Errc::MalformedLine, "line " + std::to_string(lineno) + ": bad number '" +
                                                     std::string(field) + "'", lineno);
            }
            fields.push_back(v);
            if (comma == std::string_view::npos) break;
            view = view.substr(comma + 1);
        }
        if (fields.size() != 2 && fields.size() != 3) {
            throw Error(Errc::MalformedLine, "line " + std::to_string(lineno) + ": expected 2 or 3 fields, got " +
                                                 std::to_string(fields.size()), lineno);
        }
        if (!points.empty() && fields.size() != points.dim()) {
            throw Error(Errc::MixedDimensions, "line " + std::to_string(lineno) + ": dimension changes from " +
                                                   std::to_string(points.dim()), lineno);
        }
        points.push_back(fields);
    }
    if (points.empty()) throw Error(Errc::EmptyFile, "no points found");
    return PointSet(std::move(points));
}

inline PointSet read_points(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::IoError, "cannot open '" + path + "'");
    return parse_points(in);
}

/// Shortest round-trip decimal per coordinate.
inline void write_points_csv(std::ostream& out, const PointStack& points) {
    for (std::size_t i = 0; i < points.rows(); ++i) {
        const auto r = points.row(i);
        for (std::size_t k = 0; k < r.size(); ++k) {
            if (k) out << ',';
            out << detail::format_double(r[k]);
        }
        out << '\n';
    }
}

inline void write_trace_csv(std::ostream& out, const IterationTrace& trace) {
    out << "k,epsilon\n";
    for (std::size_t k = 0; k < trace.errors.size(); ++k) {
        out << (k + 1) << ',' << detail::format_double(trace.errors[k]) << '\n';
    }
}

struct SvgStyle {
    double width_px = 640.0;
    double margin_fraction = 0.05;
    bool draw_control_polygon = false;
};

/// Sampled curve polyline plus data points, projected onto the xy-plane.
///
/// The viewBox is the data bounding box grown by the margin fraction on
/// each side; y is flipped so the picture reads with y pointing up.
inline void write_curve_svg(std::ostream& out, const PointStack& curve, const PointStack& data,
                            const PointStack* control = nullptr, const SvgStyle& style = {}) {
    double xmin = std::numeric_limits<double>::infinity();
    double xmax = -xmin;
    double ymin = xmin;
    double ymax = -xmin;
    auto grow = [&](const PointStack& s) {
        for (std::size_t i = 0; i < s.rows(); ++i) {
            xmin = std::min(xmin, s(i, 0));
            xmax = std::max(xmax, s(i, 0));
            ymin = std::min(ymin, -s(i, 1));
            ymax = std::max(ymax, -s(i, 1));
        }
    };
    grow(curve);
    grow(data);
    if (control && style.draw_control_polygon) grow(*control);
    double w = xmax - xmin;
    double h = ymax - ymin;
    if (!(w > 0.0)) w = 1.0;
    if (!(h > 0.0)) h = 1.0;
    const double mx = style.margin_fraction * w;
    const double my = style.margin_fraction * h;
    const double vx = xmin - mx;
    const double vy = ymin - my;
    const double vw = w + 2.0 * mx;
    const double vh = h + 2.0 * my;
    const double radius = 0.004 * std::max(vw, vh);

    auto pts = [](const PointStack& s) {
        std::string str;
        for (std::size_t i = 0; i < s.rows(); ++i) {
            if (i) str += ' ';
            str += detail::format_double(s(i, 0)) + ',' + detail::format_double(-s(i, 1));
        }
        return str;
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << style.width_px << "\" height=\""
        << style.width_px * vh / vw << "\" viewBox=\"" << detail::format_double(vx) << ' ' << detail::format_double(vy)
        << ' ' << detail::format_double(vw) << ' ' << detail::format_double(vh) << "\">\n";
    if (control && style.draw_control_polygon) {
        out << "  <polyline fill=\"none\" stroke=\"#999999\" stroke-dasharray=\"4 3\" "
               "vector-effect=\"non-scaling-stroke\" points=\""
            << pts(*control) << "\"/>\n";
    }
    out << "  <polyline fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\" vector-effect=\"non-scaling-stroke\" "
           "points=\""
        << pts(curve) << "\"/>\n";
    out << "  <g fill=\"#1f3a93\">\n";
    for (std::size_t i = 0; i < data.rows(); ++i) {
        out << "    <circle cx=\"" << detail::format_double(data(i, 0)) << "\" cy=\""
            << detail::format_double(-data(i, 1)) << "\" r=\"" << detail::format_double(radius) << "\"/>\n";
    }
    out << "  </g>\n</svg>\n";
}

struct RunInfo {
    std::string source;
    std::string param_scheme;
    std::string method;
    bool preconditioned = false;
    double tolerance = 0.0;
    std::size_t max_iterations = 0;
    std::size_t points = 0;
    std::size_t dim = 0;
};

/// JSON run summary, schema pgim/solve-summary v1.
inline nlohmann::json summary_json(const RunInfo& info, const IterationTrace& trace) {
    nlohmann::json j;
    j["schema"] = summary_schema_id;
    j["version"] = summary_schema_version;
    j["source"] = info.source;
    j["method"] = info.method;
    j["preconditioned"] = info.preconditioned;
    j["param_scheme"] = info.param_scheme;
    j["n"] = info.points;
    j["dim"] = info.dim;
    j["tol"] = info.tolerance;
    j["max_iter"] = info.max_iterations;
    j["converged"] = trace.converged;
    j["k"] = trace.iterations;
    j["epsilon_initial"] = trace.initial_error;
    j["epsilon_final"] = trace.errors.empty() ? trace.initial_error : trace.errors.back();
    j["omega_used"] = trace.omega_used ? nlohmann::json(*trace.omega_used) : nlohmann::json(nullptr);
    j["contraction_estimate"] =
        std::isfinite(trace.contraction_estimate) ? nlohmann::json(trace.contraction_estimate) : nlohmann::json(nullptr);
    j["elapsed_s"] = trace.elapsed;
    j["omega_time_s"] = trace.omega_seconds;
    return j;
}

}  // namespace pgim
