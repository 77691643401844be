#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string_view>
#include <utility>

#include "losplan/floorplan.hpp"
#include "losplan/point.hpp"

namespace losplan {

inline constexpr double kEpsAngleDeg = 1e-9;

/// Inner angle at `apex` of the triangle (apex, a, b), degrees in [0, 180].
inline double angle_at(Point apex, Point a, Point b) {
    const Point u = a - apex;
    const Point v = b - apex;
    return rad_to_deg(std::atan2(std::abs(cross(u, v)), dot(u, v)));
}

/// Three PRNs whose triangle has every side >= d_s and every inner angle >= theta_s.
inline bool is_triplet(Point qi, Point qj, Point qk, double d_s, double theta_s_deg,
                       double eps_len = kDefaultEpsLen) {
    const double lo = d_s - eps_len;
    if (distance(qi, qj) < lo || distance(qi, qk) < lo || distance(qj, qk) < lo) return false;
    if (theta_s_deg <= 0.0) return true;
    const double lo_angle = theta_s_deg - kEpsAngleDeg;
    return angle_at(qi, qj, qk) >= lo_angle && angle_at(qj, qi, qk) >= lo_angle &&
           angle_at(qk, qi, qj) >= lo_angle;
}

/// Twin: two PRNs at least d_s apart.
inline bool is_twin(Point qi, Point qj, double d_s, double eps_len = kDefaultEpsLen) {
    return distance(qi, qj) >= d_s - eps_len;
}

/// Visibility angles at the UE, ordered (theta_ij, theta_ik, theta_jk).
inline std::array<double, 3> visibility_angles(Point ue, Point qi, Point qj, Point qk) {
    return {angle_at(ue, qi, qj), angle_at(ue, qi, qk), angle_at(ue, qj, qk)};
}

/// Effective visibility angle: the visibility angle closest to 90 degrees
/// (first in (ij, ik, jk) order on ties).
inline double eva(Point ue, Point qi, Point qj, Point qk, double eps_len = kDefaultEpsLen) {
    if (distance(ue, qi) <= eps_len || distance(ue, qj) <= eps_len || distance(ue, qk) <= eps_len) {
        throw Error(Error::Kind::Precondition, "EVA undefined: UE coincides with a PRN");
    }
    const auto angles = visibility_angles(ue, qi, qj, qk);
    double best = angles[0];
    for (double a : angles) {
        if (std::abs(90.0 - a) < std::abs(90.0 - best)) best = a;
    }
    return best;
}

struct AngleBound {
    double degrees = 0.0;
    bool degenerate = false;  // unbounded range outside the triangle: only the 90 degree limit holds
};

/// Upper bound on |90 - theta_E| for a UE served by a triplet: 90 - theta_s inside the
/// triangle, 90 - 2 atan((d_s / 2r) tan(theta_s / 2)) outside it.
inline AngleBound eva_bound(double d_s, double theta_s_deg, double r, bool inside) {
    if (inside) return {90.0 - theta_s_deg, false};
    if (is_unbounded(r)) return {90.0, d_s > 0.0};
    const double x = (d_s / (2.0 * r)) * std::tan(deg_to_rad(theta_s_deg) / 2.0);
    return {90.0 - rad_to_deg(2.0 * std::atan(x)), false};
}

enum class RegionClass { Inside, I, II, III, IV, None };

inline std::string_view to_string(RegionClass c) {
    switch (c) {
        case RegionClass::Inside: return "INSIDE";
        case RegionClass::I: return "I";
        case RegionClass::II: return "II";
        case RegionClass::III: return "III";
        case RegionClass::IV: return "IV";
        case RegionClass::None: return "NONE";
    }
    return "NONE";
}

inline bool point_in_triangle(Point p, Point a, Point b, Point c, double eps_len = kDefaultEpsLen) {
    const double s = orient(a, b, c) >= 0.0 ? 1.0 : -1.0;
    return s * side_distance(a, b, p) >= -eps_len && s * side_distance(b, c, p) >= -eps_len &&
           s * side_distance(c, a, p) >= -eps_len;
}

inline Point circumcenter(Point a, Point b, Point c) {
    const double d = 2.0 * orient(a, b, c);
    const double a2 = dot(a, a), b2 = dot(b, b), c2 = dot(c, c);
    return {(a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d,
            (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d};
}

/// Classifies a UE against a triplet triangle: inside, or one of four exterior regions
/// cut out by the three sidelong circles (sides as diameters) and the circumscribed circle.
inline RegionClass classify_exterior_region(Point ue, Point qi, Point qj, Point qk,
                                            double eps_len = kDefaultEpsLen) {
    if (std::abs(orient(qi, qj, qk)) <= eps_len * eps_len) {
        throw Error(Error::Kind::Precondition, "degenerate triplet triangle");
    }
    if (point_in_triangle(ue, qi, qj, qk, eps_len)) return RegionClass::Inside;
    const std::array<std::pair<Point, Point>, 3> sides{{{qi, qj}, {qi, qk}, {qj, qk}}};
    int inside_sidelong = 0;
    for (const auto& [a, b] : sides) {
        if (distance(ue, (a + b) * 0.5) <= 0.5 * distance(a, b) + eps_len) ++inside_sidelong;
    }
    switch (inside_sidelong) {
        case 0: return RegionClass::I;
        case 1: return RegionClass::II;
        case 2: {
            const Point o = circumcenter(qi, qj, qk);
            const bool in_circum = distance(ue, o) <= distance(qi, o) + eps_len;
            return in_circum ? RegionClass::IV : RegionClass::III;
        }
        default:
            throw Error(Error::Kind::Precondition,
                        "inconsistent classification: UE inside all sidelong circles but outside the triangle");
    }
}

/// Closed EVA interval (degrees) guaranteed for a UE in the given region.
inline std::pair<double, double> region_eva_interval(RegionClass region, double d_s, double theta_s_deg,
                                                     double r) {
    switch (region) {
        case RegionClass::Inside: return {theta_s_deg, 120.0};
        case RegionClass::I: {
            if (is_unbounded(r)) return {0.0, 90.0};
            const double x = (d_s / (2.0 * r)) * std::tan(deg_to_rad(theta_s_deg) / 2.0);
            return {rad_to_deg(2.0 * std::atan(x)), 90.0};
        }
        case RegionClass::II: return {60.0, 120.0};
        case RegionClass::III: return {90.0, 180.0 - 2.0 * theta_s_deg};
        case RegionClass::IV: return {theta_s_deg, 180.0 - theta_s_deg};
        case RegionClass::None: break;
    }
    throw Error(Error::Kind::Precondition, "no EVA interval for an unclassified sample");
}

}  // namespace losplan
