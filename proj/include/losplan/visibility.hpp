#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <earcut.hpp>

#include "losplan/geometry.hpp"
#include "losplan/partition.hpp"

namespace losplan {

/// Set of points with unobstructed, in-range sight of a source (point, polygon or clique).
struct LosArea {
    Region region;
    std::string source;
    double range_r = kUnbounded;
};

namespace detail {

/// Reach that carries a wedge from `apex` past every corner of `b`. Keeping wedges
/// short keeps the overlay well conditioned.
inline double wedge_reach(Point apex, const Box& b) {
    double far = 0.0;
    for (const Point c : {b.min, b.max, Point{b.min.x, b.max.y}, Point{b.max.x, b.min.y}}) {
        far = std::max(far, distance(c, apex));
    }
    return 1.5 * far + 1.0;
}

/// Points hidden behind edge cd as seen from p (p strictly on the edge's interior side).
inline Region edge_shadow(Point p, Point c, Point d, double reach) {
    const Point uc = normalized(c - p);
    const Point ud = normalized(d - p);
    const Point mid = normalized(uc + ud);
    Ring ring{c, d, p + ud * reach, p + mid * reach, p + uc * reach};
    if (signed_area(ring) < 0.0) std::reverse(ring.begin(), ring.end());
    return Region::from_ring(ring, "shadow");
}

/// A point strictly inside each hole (centroid of the hole's largest ear).
inline std::vector<Point> hole_interior_points(const Layout& layout) {
    std::vector<Point> out;
    for (const Ring& h : layout.holes) {
        using P = std::array<double, 2>;
        std::vector<std::vector<P>> poly(1);
        for (const Point& p : h) poly[0].push_back({p.x, p.y});
        const auto idx = mapbox::earcut<std::uint32_t>(poly);
        double best = -1.0;
        Point pick = h.front();
        for (std::size_t i = 0; i + 2 < idx.size(); i += 3) {
            const Point a = h[idx[i]], b = h[idx[i + 1]], c = h[idx[i + 2]];
            const double area = std::abs(orient(a, b, c));
            if (area > best) {
                best = area;
                pick = (a + b + c) / 3.0;
            }
        }
        out.push_back(pick);
    }
    return out;
}

}  // namespace detail

/// Visibility polygon of P within the layout, clipped to the range disk when r is finite.
/// Computed as (layout ∩ disk) minus the shadows of every wall facing P. A source on
/// the boundary also uses back-facing walls: the walls through P are collinear with it
/// and cast nothing, yet the obstacle behind them still hides its far side.
inline LosArea los_area_point(const Layout& layout, Point P, double r, const AreaOptions& opt = {}) {
    if (!point_in_layout(layout, P, opt.eps_len)) {
        throw Error(Error::Kind::Precondition, "LoS source point lies outside the layout");
    }
    const bool ranged = !is_unbounded(r);
    if (ranged && !(r > 0.0)) return {Region{}, "point", r};

    Region area = layout_region(layout);
    if (ranged) area = intersect(area, disk_region({P, r}, opt.arc_segments), opt.eps_area);

    struct Wall {
        double dist;
        Point c, d;
    };
    bool on_boundary = false;
    for (const auto ring : layout.rings()) on_boundary = on_boundary || ring_boundary_distance(ring, P) <= opt.eps_len;
    std::vector<Wall> walls;
    for (const auto ring : layout.rings()) {
        const std::size_t n = ring.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point c = ring[i];
            const Point d = ring[(i + 1) % n];
            // Interior lies to the left of every ring edge.
            const double side = side_distance(c, d, P);
            if (on_boundary ? std::abs(side) <= opt.eps_len : side <= opt.eps_len) continue;
            const double dist = segment_point_distance(c, d, P);
            if (ranged && dist >= r) continue;
            walls.push_back({dist, c, d});
        }
    }
    std::stable_sort(walls.begin(), walls.end(), [](const Wall& a, const Wall& b) { return a.dist < b.dist; });

    for (const Wall& w : walls) {
        if (area.empty(opt.eps_area)) break;
        // A wall already fully hidden cannot hide anything new.
        if (!segment_meets_region(w.c, w.d, area, opt.eps_len)) continue;
        const double reach = std::max(detail::wedge_reach(P, area.bounds()),
                                      2.0 * std::max(distance(P, w.c), distance(P, w.d)) + 1.0);
        area = subtract(area, detail::edge_shadow(P, w.c, w.d, reach), opt.eps_area);
    }
    area.tag("L(point)");
    return {std::move(area), "point", r};
}

/// Memoized LoS areas for one layout and range. Point areas are keyed by exact
/// coordinates (triangle vertices are shared); polygon areas by triangle id.
class LosCache {
public:
    LosCache(const Layout& layout, double r, AreaOptions opt)
        : layout_(&layout), r_(r), opt_(opt), hole_points_(detail::hole_interior_points(layout)) {}

    const Layout& layout() const { return *layout_; }
    double range() const { return r_; }
    const AreaOptions& options() const { return opt_; }

    const Region& point_area(Point p) {
        auto it = points_.find(p);
        if (it == points_.end()) {
            it = points_.emplace(p, los_area_point(*layout_, p, r_, opt_).region).first;
        }
        return it->second;
    }

    /// L(p) for a convex partition polygon: the intersection of its vertex areas, minus,
    /// per hole, the viewpoints X with the hole inside conv(X ∪ p). From there the hole
    /// blocks interior points of p while every vertex stays visible. With h a point
    /// inside the hole, that set is the cone h + cone{h - v : v vertex of p}.
    Region polygon_area(std::span<const Point> vertices) {
        Region area = point_area(vertices[0]);
        for (std::size_t i = 1; i < vertices.size() && !area.empty(opt_.eps_area); ++i) {
            area = intersect(area, point_area(vertices[i]), opt_.eps_area);
        }
        for (const Point h : hole_points_) {
            if (area.empty(opt_.eps_area)) break;
            const Point ref = h - vertices[0];
            double lo = 0.0, hi = 0.0;
            Point u_lo = ref, u_hi = ref;
            for (const Point& v : vertices) {
                const Point d = h - v;
                const double ang = std::atan2(cross(ref, d), dot(ref, d));
                if (ang < lo) lo = ang, u_lo = d;
                if (ang > hi) hi = ang, u_hi = d;
            }
            if (hi - lo <= 1e-12) continue;
            area = subtract(area, wedge_region(h, u_lo, u_hi, detail::wedge_reach(h, area.bounds())), opt_.eps_area);
        }
        return area.tag("L(polygon)");
    }

    const Region& triangle_area(const Triangle& t) {
        if (t.id >= static_cast<int>(triangles_.size())) triangles_.resize(t.id + 1);
        auto& slot = triangles_[t.id];
        if (!slot) slot = polygon_area(t.vertices);
        return *slot;
    }

private:
    const Layout* layout_;
    double r_;
    AreaOptions opt_;
    std::vector<Point> hole_points_;
    std::map<Point, Region> points_;
    std::vector<std::optional<Region>> triangles_;
};

inline LosArea los_area_polygon(const Layout& layout, std::span<const Point> vertices, double r,
                                const AreaOptions& opt = {}) {
    for (const Point& v : vertices) {
        if (!point_in_layout(layout, v, opt.eps_len)) {
            throw Error(Error::Kind::Precondition, "polygon vertex lies outside the layout");
        }
    }
    if (!is_unbounded(r) && !(r > 0.0)) return {Region{}, "polygon", r};
    LosCache cache(layout, r, opt);
    return {cache.polygon_area(vertices), "polygon", r};
}

inline LosArea los_area_polygon(const Layout& layout, const Triangle& t, double r, const AreaOptions& opt = {}) {
    LosArea out = los_area_polygon(layout, t.vertices, r, opt);
    out.source = "triangle " + std::to_string(t.id);
    return out;
}

/// L(C): intersection of the members' LoS areas.
inline LosArea los_area_clique(std::span<const LosArea> areas, std::string clique_id = "clique",
                               double eps_area = kDefaultEpsArea) {
    if (areas.empty()) throw Error(Error::Kind::Precondition, "clique LoS area needs at least one member");
    Region acc = areas[0].region;
    for (std::size_t i = 1; i < areas.size() && !acc.empty(eps_area); ++i) {
        acc = intersect(acc, areas[i].region, eps_area);
    }
    if (acc.empty(eps_area)) acc = Region{};
    acc.tag("L(" + clique_id + ")");
    return {std::move(acc), std::move(clique_id), areas[0].range_r};
}

}  // namespace losplan
