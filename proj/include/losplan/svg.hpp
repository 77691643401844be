#pragma once

#include <array>
#include <cstdio>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "losplan/evaluate.hpp"
#include "losplan/floorplan.hpp"
#include "losplan/geometry.hpp"
#include "losplan/losgraph.hpp"
#include "losplan/partition.hpp"
#include "losplan/planner.hpp"

namespace losplan {

struct RenderSpec {
    int width_px = 800;
    double margin_px = 20.0;
    double wall_stroke = 2.0;
    double mesh_stroke = 0.5;
    double prn_radius = 5.0;
    bool layout = true;
    bool triangles = false;
    bool graph = false;
    bool areas = false;
    bool prns = true;
    bool samples = false;
    std::vector<std::string> colors{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

    const std::string& color(std::size_t i) const { return colors[i % colors.size()]; }
};

/// Everything a picture may show; null members are skipped.
struct Scene {
    const Layout* layout = nullptr;
    std::span<const Triangle> triangles;
    const LosGraph* graph = nullptr;
    std::span<const Region> areas;
    const Deployment* deployment = nullptr;
    std::span<const EvaSample> samples;
};

namespace detail {

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

/// World -> pixel transform with y flipped.
struct Frame {
    Box world;
    double scale = 1.0;
    double margin = 0.0;
    double height_px = 0.0;

    std::string x(double wx) const { return fmt(margin + (wx - world.min.x) * scale); }
    std::string y(double wy) const { return fmt(height_px - margin - (wy - world.min.y) * scale); }
    std::string pt(Point p) const { return x(p.x) + "," + y(p.y); }
};

inline std::string ring_path(const Frame& f, std::span<const Point> ring) {
    std::string d;
    for (std::size_t i = 0; i < ring.size(); ++i) d += (i == 0 ? "M" : " L") + f.pt(ring[i]);
    return d + " Z";
}

}  // namespace detail

inline std::string render_svg(const Scene& scene, const RenderSpec& spec = {}) {
    if (!scene.layout) throw Error(Error::Kind::Precondition, "render needs a layout");
    const Box world = scene.layout->bounds();
    detail::Frame f;
    f.world = world;
    f.margin = spec.margin_px;
    const double span_x = std::max(world.width(), 1e-9);
    f.scale = (spec.width_px - 2.0 * spec.margin_px) / span_x;
    f.height_px = std::ceil(world.height() * f.scale + 2.0 * spec.margin_px);

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" baseProfile=\"basic\" width=\"" << spec.width_px
       << "\" height=\"" << detail::fmt(f.height_px) << "\" viewBox=\"0 0 " << spec.width_px << " "
       << detail::fmt(f.height_px) << "\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << spec.width_px << "\" height=\"" << detail::fmt(f.height_px)
       << "\" fill=\"#ffffff\"/>\n";

    const Layout& L = *scene.layout;
    if (spec.layout) {
        std::string d = detail::ring_path(f, L.outer);
        for (const Ring& h : L.holes) d += " " + detail::ring_path(f, h);
        os << "<g id=\"layout\"><path d=\"" << d << "\" fill=\"#f4f4f4\" fill-rule=\"evenodd\" stroke=\"#000000\" stroke-width=\""
           << detail::fmt(spec.wall_stroke) << "\"/></g>\n";
    }
    if (spec.areas && !scene.areas.empty()) {
        os << "<g id=\"areas\" fill-opacity=\"0.25\" stroke-width=\"1\">\n";
        for (std::size_t k = 0; k < scene.areas.size(); ++k) {
            std::string d;
            for (const Ring& r : scene.areas[k].rings()) d += (d.empty() ? "" : " ") + detail::ring_path(f, r);
            if (d.empty()) continue;
            os << "<path d=\"" << d << "\" fill=\"" << spec.color(k) << "\" stroke=\"" << spec.color(k)
               << "\" fill-rule=\"evenodd\"/>\n";
        }
        os << "</g>\n";
    }
    if (spec.triangles && !scene.triangles.empty()) {
        os << "<g id=\"triangles\" fill=\"none\" stroke=\"#888888\" stroke-width=\"" << detail::fmt(spec.mesh_stroke) << "\">\n";
        for (const Triangle& t : scene.triangles) os << "<path d=\"" << detail::ring_path(f, t.vertices) << "\"/>\n";
        os << "</g>\n";
    }
    if (spec.graph && scene.graph && !scene.triangles.empty()) {
        os << "<g id=\"graph\" stroke=\"#555555\" stroke-width=\"0.5\">\n";
        for (int a : scene.graph->nodes()) {
            for (int b : scene.graph->neighbors(a)) {
                if (b <= a) continue;
                const Point pa = scene.triangles[a].centroid(), pb = scene.triangles[b].centroid();
                os << "<line x1=\"" << f.x(pa.x) << "\" y1=\"" << f.y(pa.y) << "\" x2=\"" << f.x(pb.x) << "\" y2=\""
                   << f.y(pb.y) << "\"/>\n";
            }
        }
        os << "</g>\n";
    }
    if (spec.samples && !scene.samples.empty()) {
        os << "<g id=\"samples\">\n";
        for (const EvaSample& s : scene.samples) {
            os << "<circle cx=\"" << f.x(s.ue.x) << "\" cy=\"" << f.y(s.ue.y) << "\" r=\"1\" fill=\""
               << (s.covered ? "#2ca02c" : "#d62728") << "\"/>\n";
        }
        os << "</g>\n";
    }
    if (spec.prns && scene.deployment) {
        static constexpr std::array<const char*, 3> tier_fill{"#d62728", "#1f77b4", "#2ca02c"};
        os << "<g id=\"prns\" stroke=\"#000000\" stroke-width=\"1\">\n";
        for (const Prn& p : scene.deployment->prns) {
            os << "<circle cx=\"" << f.x(p.at.x) << "\" cy=\"" << f.y(p.at.y) << "\" r=\"" << detail::fmt(spec.prn_radius)
               << "\" fill=\"" << tier_fill[static_cast<int>(p.tier)] << "\"/>\n";
        }
        os << "</g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace losplan
