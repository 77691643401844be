#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <clipper2/clipper.h>

#include "losplan/floorplan.hpp"
#include "losplan/point.hpp"

namespace losplan {

namespace clip = Clipper2Lib;

/// Fixed-point scale for the overlay engine: one unit is a nanometre.
inline constexpr double kGridScale = 1e9;

/// Area value with set algebra on an exact integer grid (Clipper2). Fill rings are
/// counter-clockwise and holes clockwise; a double copy of the rings serves queries.
class Region {
public:
    Region() = default;
    explicit Region(clip::Paths64 paths, std::string provenance = {})
        : paths_(std::move(paths)), provenance_(std::move(provenance)) {
        std::erase_if(paths_, [](const clip::Path64& p) { return p.size() < 3; });
        for (const clip::Path64& path : paths_) {
            Ring r;
            r.reserve(path.size());
            for (const clip::Point64& q : path) {
                const Point v{static_cast<double>(q.x) / kGridScale, static_cast<double>(q.y) / kGridScale};
                r.push_back(v);
                bounds_.expand(v);
            }
            rings_.push_back(std::move(r));
        }
    }

    static clip::Path64 to_path(std::span<const Point> ring, bool ccw) {
        clip::Path64 path;
        path.reserve(ring.size());
        for (const Point& p : ring) path.emplace_back(std::llround(p.x * kGridScale), std::llround(p.y * kGridScale));
        if ((clip::Area(path) > 0.0) != ccw) std::reverse(path.begin(), path.end());
        return path;
    }

    static Region from_ring(std::span<const Point> ring, std::string provenance = {}) {
        return Region(clip::Paths64{to_path(ring, true)}, std::move(provenance));
    }

    static Region from_rings(std::span<const Point> outer, const std::vector<Ring>& holes,
                             std::string provenance = {}) {
        clip::Paths64 paths{to_path(outer, true)};
        for (const Ring& h : holes) paths.push_back(to_path(h, false));
        return Region(std::move(paths), std::move(provenance));
    }

    static Region from_box(const Box& b, std::string provenance = {}) {
        const Ring ring{{b.min.x, b.min.y}, {b.max.x, b.min.y}, {b.max.x, b.max.y}, {b.min.x, b.max.y}};
        return from_ring(ring, std::move(provenance));
    }

    const clip::Paths64& paths() const { return paths_; }
    const std::string& provenance() const { return provenance_; }
    Region& tag(std::string provenance) {
        provenance_ = std::move(provenance);
        return *this;
    }

    double area() const { return clip::Area(paths_) / (kGridScale * kGridScale); }
    bool empty(double eps_area = kDefaultEpsArea) const { return paths_.empty() || area() < eps_area; }
    const Box& bounds() const { return bounds_; }

    /// Ring vertices, fill rings and holes alike.
    std::vector<Point> vertices() const {
        std::vector<Point> out;
        for (const Ring& r : rings_) out.insert(out.end(), r.begin(), r.end());
        return out;
    }

    /// Flattened ring list with fill/hole orientation (CCW fill, CW hole).
    const std::vector<Ring>& rings() const { return rings_; }

private:
    clip::Paths64 paths_;
    std::vector<Ring> rings_;
    std::string provenance_;
    Box bounds_;
};

enum class BooleanOp { Union, Intersect, Subtract };

namespace detail {

/// Flattens an overlay result, dropping slivers (and everything nested in them).
inline void collect(const clip::PolyPath64& node, double eps_area, clip::Paths64& out) {
    for (const auto& child : node) {
        const double a = std::abs(clip::Area(child->Polygon())) / (kGridScale * kGridScale);
        if (a < eps_area) continue;
        out.push_back(child->Polygon());
        collect(*child, eps_area, out);
    }
}

}  // namespace detail

/// Union / intersection / difference of polygonal regions (up to eps_area slivers).
inline Region region_boolean(BooleanOp op, const Region& a, const Region& b,
                             double eps_area = kDefaultEpsArea) {
    clip::ClipType type = clip::ClipType::Union;
    switch (op) {
        case BooleanOp::Union:
            if (a.paths().empty()) return Region(b.paths());
            if (b.paths().empty()) return Region(a.paths());
            break;
        case BooleanOp::Intersect:
            if (a.paths().empty() || b.paths().empty() || !a.bounds().overlaps(b.bounds())) return Region{};
            type = clip::ClipType::Intersection;
            break;
        case BooleanOp::Subtract:
            if (a.paths().empty()) return Region{};
            if (b.paths().empty() || !a.bounds().overlaps(b.bounds())) return Region(a.paths());
            type = clip::ClipType::Difference;
            break;
    }
    clip::Clipper64 engine;
    engine.AddSubject(a.paths());
    engine.AddClip(b.paths());
    clip::PolyTree64 tree;
    engine.Execute(type, clip::FillRule::NonZero, tree);
    clip::Paths64 out;
    detail::collect(tree, eps_area, out);
    return Region(std::move(out));
}

inline Region intersect(const Region& a, const Region& b, double eps_area = kDefaultEpsArea) {
    return region_boolean(BooleanOp::Intersect, a, b, eps_area);
}
inline Region unite(const Region& a, const Region& b, double eps_area = kDefaultEpsArea) {
    return region_boolean(BooleanOp::Union, a, b, eps_area);
}
inline Region subtract(const Region& a, const Region& b, double eps_area = kDefaultEpsArea) {
    return region_boolean(BooleanOp::Subtract, a, b, eps_area);
}

/// Distance from p to the region's boundary.
inline double boundary_distance(Point p, const Region& reg) {
    double best = std::numeric_limits<double>::infinity();
    for (const Ring& ring : reg.rings()) best = std::min(best, ring_boundary_distance(ring, p));
    return best;
}

/// Open membership by crossing parity over every ring (boundary excluded).
inline bool region_contains(const Region& reg, Point p) {
    const Box& b = reg.bounds();
    if (!b.valid() || p.x < b.min.x || p.x > b.max.x || p.y < b.min.y || p.y > b.max.y) return false;
    bool inside = false;
    for (const Ring& ring : reg.rings()) inside ^= ring_contains(ring, p);
    return inside;
}

/// Closed membership: true inside or within eps_len of the boundary.
inline bool point_in_region(Point p, const Region& reg, double eps_len = kDefaultEpsLen) {
    const Box& b = reg.bounds();
    if (!b.valid() || p.x < b.min.x - eps_len || p.x > b.max.x + eps_len || p.y < b.min.y - eps_len ||
        p.y > b.max.y + eps_len) {
        return false;
    }
    return region_contains(reg, p) || boundary_distance(p, reg) <= eps_len;
}

/// Distance from p to the nearest boundary of the region (0 for outside points).
inline double depth_in_region(Point p, const Region& reg) {
    return region_contains(reg, p) ? boundary_distance(p, reg) : 0.0;
}

/// Area centroid.
inline Point region_centroid(const Region& reg) {
    double a = 0.0, cx = 0.0, cy = 0.0;
    for (const Ring& r : reg.rings()) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            const Point p = r[i], q = r[(i + 1) % r.size()];
            const double w = cross(p, q);
            a += w;
            cx += (p.x + q.x) * w;
            cy += (p.y + q.y) * w;
        }
    }
    if (a == 0.0) return reg.bounds().valid() ? reg.bounds().center() : Point{};
    return {cx / (3.0 * a), cy / (3.0 * a)};
}

/// True iff the closed segment ab touches the closed region.
inline bool segment_meets_region(Point a, Point b, const Region& reg, double eps_len = kDefaultEpsLen) {
    if (reg.rings().empty()) return false;
    Box sb;
    sb.expand(a);
    sb.expand(b);
    if (!sb.overlaps(reg.bounds(), eps_len)) return false;
    if (point_in_region(a, reg, eps_len) || point_in_region(b, reg, eps_len)) return true;
    for (const Ring& ring : reg.rings()) {
        for (std::size_t i = 0; i < ring.size(); ++i) {
            if (segments_touch(a, b, ring[i], ring[(i + 1) % ring.size()], eps_len)) return true;
        }
    }
    return false;
}

/// Euclidean distance between two closed regions (0 when they touch or overlap).
inline double region_distance(const Region& a, const Region& b) {
    if (a.rings().empty() || b.rings().empty()) return std::numeric_limits<double>::infinity();
    // Without boundary contact a component is either nested in the other region or apart.
    for (const Ring& r : a.rings()) {
        if (region_contains(b, r.front())) return 0.0;
    }
    for (const Ring& r : b.rings()) {
        if (region_contains(a, r.front())) return 0.0;
    }
    double best = std::numeric_limits<double>::infinity();
    for (const Ring& ra : a.rings()) {
        for (std::size_t i = 0; i < ra.size(); ++i) {
            const Point p = ra[i], q = ra[(i + 1) % ra.size()];
            for (const Ring& rb : b.rings()) {
                for (std::size_t j = 0; j < rb.size(); ++j) {
                    best = std::min(best, segment_distance(p, q, rb[j], rb[(j + 1) % rb.size()]));
                    if (best == 0.0) return 0.0;
                }
            }
        }
    }
    return best;
}

/// Discretization and tolerance knobs shared by every region-producing operation.
struct AreaOptions {
    int arc_segments = 64;
    double eps_len = kDefaultEpsLen;
    double eps_area = kDefaultEpsArea;
};

inline AreaOptions area_options(const PlanConfig& cfg) {
    return {cfg.arc_segments, cfg.eps_len, cfg.eps_area};
}

struct Disk {
    Point center;
    double radius = 0.0;
};

/// Regular n-gon inscribed in the disk: every vertex lies on the circle, so the
/// polygon never exceeds the true disk. Area = (n/2) r^2 sin(2 pi / n).
inline Region disk_region(const Disk& d, int arc_segments) {
    if (!(d.radius > 0.0)) throw Error(Error::Kind::Precondition, "disk radius must be positive");
    if (arc_segments < 8) throw Error(Error::Kind::Precondition, "arc_segments must be at least 8");
    Ring ring;
    ring.reserve(static_cast<std::size_t>(arc_segments));
    for (int k = 0; k < arc_segments; ++k) {
        const double a = 2.0 * kPi * k / arc_segments;
        ring.push_back({d.center.x + d.radius * std::cos(a), d.center.y + d.radius * std::sin(a)});
    }
    return Region::from_ring(ring, "disk");
}

/// Regular n-gon circumscribed about the disk (contains the true disk). Used
/// wherever a disk is subtracted so the remainder stays conservative.
inline Region disk_region_outer(const Disk& d, int arc_segments) {
    return disk_region({d.center, d.radius / std::cos(kPi / arc_segments)}, arc_segments);
}

/// The closed layout as a region.
inline Region layout_region(const Layout& layout) {
    return Region::from_rings(layout.outer, layout.holes, "layout");
}

/// Convex wedge {apex + s*u + t*v : s, t >= 0} clipped to `reach` (u, v non-opposite).
inline Region wedge_region(Point apex, Point u, Point v, double reach) {
    const Point du = normalized(u);
    const Point dv = normalized(v);
    const Point mid = normalized(du + dv);
    // Consecutive directions are at most 90 degrees apart, so the far chain stays
    // at least reach * cos(45 deg) from the apex.
    Ring ring{apex, apex + du * reach, apex + mid * reach, apex + dv * reach};
    if (signed_area(ring) < 0.0) std::reverse(ring.begin() + 1, ring.end());
    return Region::from_ring(ring, "wedge");
}

/// True iff segment ab stays inside the closed layout: no proper crossing of a
/// layout edge; grazing a vertex or running along a wall counts as clear.
inline bool segment_clear(const Layout& layout, Point a, Point b, double eps_len = kDefaultEpsLen) {
    if (!point_in_layout(layout, a, eps_len) || !point_in_layout(layout, b, eps_len)) {
        throw Error(Error::Kind::Precondition, "segment_clear endpoint lies outside the layout");
    }
    const double len = distance(a, b);
    if (len <= eps_len) return true;
    const Point dir = (b - a) / len;

    std::vector<double> cuts{0.0, 1.0};
    for (const auto ring : layout.rings()) {
        const std::size_t n = ring.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point c = ring[i];
            const Point d = ring[(i + 1) % n];
            if (segments_cross_properly(a, b, c, d, eps_len)) return false;
            // Record every contact so each open piece between contacts can be probed.
            for (const Point v : {c, d}) {
                if (segment_point_distance(a, b, v) <= eps_len) {
                    cuts.push_back(std::clamp(dot(v - a, dir) / len, 0.0, 1.0));
                }
            }
            const double da = side_distance(c, d, a);
            const double db = side_distance(c, d, b);
            if ((da > eps_len && db < -eps_len) || (da < -eps_len && db > eps_len)) {
                const double t = da / (da - db);
                const Point x = a + (b - a) * t;
                if (segment_point_distance(c, d, x) <= eps_len) cuts.push_back(t);
            }
        }
    }
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if ((cuts[i + 1] - cuts[i]) * len <= eps_len) continue;
        const Point mid = a + (b - a) * (0.5 * (cuts[i] + cuts[i + 1]));
        if (!point_in_layout(layout, mid, eps_len)) return false;
    }
    return true;
}

}  // namespace losplan
