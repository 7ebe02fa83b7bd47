#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "pgim/error.hpp"
#include "pgim/points.hpp"

namespace pgim {

enum class ExampleId { duck, butterfly, chrysanthemum, spatial_circular, rose3d, spherical_cardioid };

inline constexpr std::array<ExampleId, 6> all_examples{ExampleId::duck,          ExampleId::butterfly,
                                                       ExampleId::chrysanthemum, ExampleId::spatial_circular,
                                                       ExampleId::rose3d,        ExampleId::spherical_cardioid};

/// z-coordinate formula for the spherical cardioid.
enum class CardioidZ {
    reciprocal,  ///< z = sqrt(8) cos(2 / t), as published
    half_angle,  ///< z = sqrt(8) cos(t / 2)
};

struct ExampleSpec {
    ExampleId id = ExampleId::duck;
    std::size_t n = 41;
    double lo = 0.0;  ///< parameter range; open for the cardioid, closed otherwise
    double hi = 0.0;
    CardioidZ cardioid_z = CardioidZ::reciprocal;
};

inline std::string_view to_string(ExampleId id) noexcept {
    switch (id) {
    case ExampleId::duck: return "duck";
    case ExampleId::butterfly: return "butterfly";
    case ExampleId::chrysanthemum: return "chrysanthemum";
    case ExampleId::spatial_circular: return "spatial_circular";
    case ExampleId::rose3d: return "rose3d";
    case ExampleId::spherical_cardioid: return "spherical_cardioid";
    }
    return "unknown";
}

inline ExampleId parse_example(std::string_view name) {
    for (ExampleId id : all_examples) {
        if (to_string(id) == name) return id;
    }
    throw Error(Errc::InvalidArgument, "unknown example '" + std::string(name) + "'");
}

/// Published point count and parameter range; n applies to the cardioid only.
inline ExampleSpec default_spec(ExampleId id, std::optional<std::size_t> n = std::nullopt) {
    using std::numbers::pi;
    switch (id) {
    case ExampleId::duck:
        if (n && *n != 41) throw Error(Errc::InvalidArgument, "the duck data has a fixed size of 41 points");
        return {id, 41, 0.0, 0.0};
    case ExampleId::butterfly: return {id, n.value_or(150), 0.0, 2.0 * pi};
    case ExampleId::chrysanthemum: return {id, n.value_or(500), 0.0, 21.0 * pi};
    case ExampleId::spatial_circular: return {id, n.value_or(300), -7.0 * pi, 7.0 * pi};
    case ExampleId::rose3d: return {id, n.value_or(200), -2.0 * pi, 2.0 * pi};
    case ExampleId::spherical_cardioid: return {id, n.value_or(1000), 0.0, 4.0 * pi};
    }
    throw Error(Errc::InvalidArgument, "unknown example");
}

/// The 41 listed outline points of the duck; the first point closes the outline.
inline PointSet duck_points() {
    static constexpr double xy[41][2] = {
        {-0.2356, 0.3978}, {-0.2044, 0.4178}, {-0.1711, 0.4289}, {-0.1467, 0.4733}, {-0.1022, 0.4978},
        {-0.0533, 0.4933}, {-0.0200, 0.4667}, {0.0, 0.4444},     {0.0089, 0.4111},  {-0.0044, 0.3667},
        {-0.0333, 0.3311}, {-0.0778, 0.2756}, {-0.1067, 0.2400}, {-0.1178, 0.2000}, {-0.0889, 0.1778},
        {-0.0511, 0.2156}, {0.0156, 0.2533},  {0.0844, 0.2778},  {0.1467, 0.2956},  {0.2111, 0.2911},
        {0.2556, 0.2644},  {0.2578, 0.2222},  {0.2267, 0.1911},  {0.2667, 0.1800},  {0.2622, 0.1467},
        {0.2222, 0.1111},  {0.2467, 0.0933},  {0.2267, 0.0556},  {0.1800, 0.0289},  {0.0200, 0.0244},
        {-0.1311, 0.0267}, {-0.1711, 0.0711}, {-0.2133, 0.1356}, {-0.2133, 0.2067}, {-0.1822, 0.2622},
        {-0.1311, 0.3178}, {-0.1000, 0.3733}, {-0.1533, 0.3733}, {-0.2178, 0.3689}, {-0.2311, 0.3822},
        {-0.2356, 0.3978},
    };
    PointStack s(41, 2);
    for (std::size_t i = 0; i < 41; ++i) {
        s(i, 0) = xy[i][0];
        s(i, 1) = xy[i][1];
    }
    return PointSet(std::move(s));
}

/// Samples one of the parametric examples at spec.n parameters.
///
/// Closed ranges include both ends; the cardioid's open range (0, 4 pi)
/// uses t_j = 4 pi j / (n + 1), j = 1..n. Polar curves map through
/// x = r cos(theta), y = r sin(theta).
inline PointSet sample_curve(const ExampleSpec& spec) {
    if (spec.id == ExampleId::duck) return duck_points();
    if (spec.n < PointSet::min_points) throw Error(Errc::TooFewPoints, "example needs at least 4 samples");
    if (!(spec.hi > spec.lo)) throw Error(Errc::InvalidArgument, "empty parameter range");

    const std::size_t n = spec.n;
    const bool planar = spec.id == ExampleId::butterfly || spec.id == ExampleId::chrysanthemum;
    PointStack s(n, planar ? 2 : 3);
    for (std::size_t j = 0; j < n; ++j) {
        double t = 0.0;
        if (spec.id == ExampleId::spherical_cardioid) {
            t = spec.lo + (spec.hi - spec.lo) * static_cast<double>(j + 1) / static_cast<double>(n + 1);
        } else {
            t = j + 1 == n ? spec.hi
                           : spec.lo + (spec.hi - spec.lo) * static_cast<double>(j) / static_cast<double>(n - 1);
        }
        switch (spec.id) {
        case ExampleId::butterfly: {
            const double r = (std::sin(t) + std::pow(std::sin(3.5 * t), 3)) / 1000.0;
            s(j, 0) = r * std::cos(t);
            s(j, 1) = r * std::sin(t);
            break;
        }
        case ExampleId::chrysanthemum: {
            const double r = (5.0 * (1.0 + std::sin(11.0 * t / 5.0)) -
                              4.0 * std::pow(std::sin(17.0 * t / 3.0), 4) *
                                  std::pow(std::sin(2.0 * std::cos(3.0 * t) - 28.0 * t), 8)) /
                             50.0;
            s(j, 0) = r * std::cos(t);
            s(j, 1) = r * std::sin(t);
            break;
        }
        case ExampleId::spatial_circular: {
            const double rad = 4.0 + std::sin(20.0 * t);
            s(j, 0) = rad * std::cos(t);
            s(j, 1) = rad * std::sin(t);
            s(j, 2) = std::cos(20.0 * t);
            break;
        }
        case ExampleId::rose3d:
            s(j, 0) = std::sin(3.0 * t) * std::cos(t);
            s(j, 1) = std::sin(3.0 * t) * std::sin(t);
            s(j, 2) = t;
            break;
        case ExampleId::spherical_cardioid: {
            s(j, 0) = 2.0 * std::cos(t) - std::cos(2.0 * t);
            s(j, 1) = 2.0 * std::sin(t) - std::sin(2.0 * t);
            const double arg = spec.cardioid_z == CardioidZ::reciprocal ? 2.0 / t : t / 2.0;
            s(j, 2) = std::sqrt(8.0) * std::cos(arg);
            break;
        }
        case ExampleId::duck: break;
        }
    }
    return PointSet(std::move(s));
}

inline PointSet example_points(ExampleId id, std::optional<std::size_t> n = std::nullopt,
                               CardioidZ z = CardioidZ::reciprocal) {
    ExampleSpec spec = default_spec(id, n);
    spec.cardioid_z = z;
    return sample_curve(spec);
}

}  // namespace pgim
