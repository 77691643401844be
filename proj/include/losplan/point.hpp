#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace losplan {

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();
inline constexpr double kPi = 3.14159265358979323846;

inline constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

inline bool is_unbounded(double v) { return std::isinf(v); }

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend constexpr bool operator==(const Point&, const Point&) = default;
    friend constexpr auto operator<=>(const Point&, const Point&) = default;

    constexpr Point operator+(Point o) const { return {x + o.x, y + o.y}; }
    constexpr Point operator-(Point o) const { return {x - o.x, y - o.y}; }
    constexpr Point operator*(double s) const { return {x * s, y * s}; }
    constexpr Point operator/(double s) const { return {x / s, y / s}; }
};

using Ring = std::vector<Point>;

inline constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }

inline Point normalized(Point a) {
    const double n = norm(a);
    return n > 0.0 ? a / n : Point{};
}

inline Point rotated(Point a, double radians) {
    const double c = std::cos(radians);
    const double s = std::sin(radians);
    return {c * a.x - s * a.y, s * a.x + c * a.y};
}

/// Twice the signed area of (a, b, c); positive when counter-clockwise.
inline constexpr double orient(Point a, Point b, Point c) { return cross(b - a, c - a); }

/// Signed distance of c from the directed line a->b (left positive).
inline double side_distance(Point a, Point b, Point c) {
    const double len = distance(a, b);
    if (len == 0.0) return distance(a, c);
    return orient(a, b, c) / len;
}

inline double signed_area(std::span<const Point> ring) {
    double twice = 0.0;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        twice += cross(ring[i], ring[(i + 1) % n]);
    }
    return 0.5 * twice;
}

inline double segment_point_distance(Point a, Point b, Point p) {
    const Point ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0) return distance(a, p);
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return distance(a + ab * t, p);
}

/// Proper crossing of segments ab and cd: interiors intersect at a single point
/// and every endpoint is farther than `eps` from the other segment's line.
inline bool segments_cross_properly(Point a, Point b, Point c, Point d, double eps) {
    const double d1 = side_distance(a, b, c);
    const double d2 = side_distance(a, b, d);
    const double d3 = side_distance(c, d, a);
    const double d4 = side_distance(c, d, b);
    return ((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps)) &&
           ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps));
}

/// Any contact between closed segments ab and cd within `eps`.
inline bool segments_touch(Point a, Point b, Point c, Point d, double eps) {
    if (segments_cross_properly(a, b, c, d, 0.0)) return true;
    return segment_point_distance(a, b, c) <= eps || segment_point_distance(a, b, d) <= eps ||
           segment_point_distance(c, d, a) <= eps || segment_point_distance(c, d, b) <= eps;
}

inline double segment_distance(Point a, Point b, Point c, Point d) {
    if (segments_cross_properly(a, b, c, d, 0.0)) return 0.0;
    return std::min({segment_point_distance(a, b, c), segment_point_distance(a, b, d),
                     segment_point_distance(c, d, a), segment_point_distance(c, d, b)});
}

/// Counter-clockwise convex hull (Andrew's monotone chain), collinear points dropped.
inline Ring convex_hull(std::span<const Point> pts) {
    Ring p(pts.begin(), pts.end());
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    if (p.size() < 3) return p;
    Ring h(2 * p.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        while (k >= 2 && orient(h[k - 2], h[k - 1], p[i]) <= 0.0) --k;
        h[k++] = p[i];
    }
    for (std::size_t i = p.size() - 1, lo = k + 1; i-- > 0;) {
        while (k >= lo && orient(h[k - 2], h[k - 1], p[i]) <= 0.0) --k;
        h[k++] = p[i];
    }
    h.resize(k - 1);
    return h;
}

/// Crossing-number test, boundary excluded (callers add their own tolerance).
inline bool ring_contains(std::span<const Point> ring, Point p) {
    bool inside = false;
    const std::size_t n = ring.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point a = ring[i];
        const Point b = ring[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < x) inside = !inside;
        }
    }
    return inside;
}

inline double ring_boundary_distance(std::span<const Point> ring, Point p) {
    double best = std::numeric_limits<double>::infinity();
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        best = std::min(best, segment_point_distance(ring[i], ring[(i + 1) % n], p));
    }
    return best;
}

struct Box {
    Point min{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    Point max{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};

    void expand(Point p) {
        min.x = std::min(min.x, p.x);
        min.y = std::min(min.y, p.y);
        max.x = std::max(max.x, p.x);
        max.y = std::max(max.y, p.y);
    }
    bool valid() const { return min.x <= max.x && min.y <= max.y; }
    double width() const { return max.x - min.x; }
    double height() const { return max.y - min.y; }
    double diagonal() const { return valid() ? std::hypot(width(), height()) : 0.0; }
    Point center() const { return (min + max) * 0.5; }
    bool overlaps(const Box& o, double eps = 0.0) const {
        return valid() && o.valid() && min.x <= o.max.x + eps && o.min.x <= max.x + eps &&
               min.y <= o.max.y + eps && o.min.y <= max.y + eps;
    }
};

inline Box bounds_of(std::span<const Point> pts) {
    Box b;
    for (const Point& p : pts) b.expand(p);
    return b;
}

}  // namespace losplan
