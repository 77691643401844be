#pragma once

#include <array>
#include <map>
#include <utility>
#include <vector>

#include <earcut.hpp>

#include "losplan/floorplan.hpp"
#include "losplan/point.hpp"

namespace losplan {

/// Partition cell; a node of every LoS graph. Vertices are counter-clockwise.
struct Triangle {
    std::array<Point, 3> vertices;
    int id = 0;

    double area() const { return 0.5 * orient(vertices[0], vertices[1], vertices[2]); }
    Point centroid() const { return (vertices[0] + vertices[1] + vertices[2]) / 3.0; }
    double side(int k) const { return distance(vertices[k], vertices[(k + 1) % 3]); }
    double longest_side() const { return std::max({side(0), side(1), side(2)}); }
};

namespace detail {

/// Indexed triangle mesh used while refining.
struct Mesh {
    std::vector<Point> points;
    std::vector<std::array<int, 3>> tris;
};

inline Mesh earcut_mesh(const Layout& layout, double eps_area) {
    using P = std::array<double, 2>;
    std::vector<std::vector<P>> poly;
    Mesh mesh;
    for (const auto ring : layout.rings()) {
        std::vector<P> r;
        for (const Point& p : ring) {
            r.push_back({p.x, p.y});
            mesh.points.push_back(p);
        }
        poly.push_back(std::move(r));
    }
    const std::vector<std::uint32_t> idx = mapbox::earcut<std::uint32_t>(poly);
    for (std::size_t i = 0; i + 2 < idx.size(); i += 3) {
        std::array<int, 3> t{static_cast<int>(idx[i]), static_cast<int>(idx[i + 1]),
                             static_cast<int>(idx[i + 2])};
        const double a = 0.5 * orient(mesh.points[t[0]], mesh.points[t[1]], mesh.points[t[2]]);
        if (std::abs(a) < eps_area) continue;
        if (a < 0.0) std::swap(t[1], t[2]);
        mesh.tris.push_back(t);
    }
    return mesh;
}

inline std::vector<Triangle> to_triangles(const Mesh& mesh) {
    std::vector<Triangle> out;
    out.reserve(mesh.tris.size());
    for (const auto& t : mesh.tris) {
        out.push_back({{mesh.points[t[0]], mesh.points[t[1]], mesh.points[t[2]]},
                       static_cast<int>(out.size())});
    }
    return out;
}

}  // namespace detail

/// Ear-clipping triangulation of the layout (holes bridged into the outer ring).
inline std::vector<Triangle> triangulate(const Layout& layout, double eps_area = kDefaultEpsArea) {
    if (!(layout.area() > eps_area)) throw Error(Error::Kind::Precondition, "layout has zero area");
    return detail::to_triangles(detail::earcut_mesh(layout, eps_area));
}

/// Refines the triangulation until no side exceeds R by repeatedly bisecting the
/// globally longest side (lowest triangle, then lowest edge index on ties). The
/// triangle across that side, when present, is split at the same midpoint, so
/// the mesh stays conforming.
inline std::vector<Triangle> hyper_triangulate(const Layout& layout, double R,
                                               double eps_len = kDefaultEpsLen,
                                               double eps_area = kDefaultEpsArea) {
    if (!(R > eps_len)) throw Error(Error::Kind::Precondition, "hyper-triangulation bound R must exceed eps_len");
    if (!(layout.area() > eps_area)) throw Error(Error::Kind::Precondition, "layout has zero area");
    detail::Mesh mesh = detail::earcut_mesh(layout, eps_area);
    if (is_unbounded(R)) return detail::to_triangles(mesh);

    using EdgeKey = std::pair<int, int>;
    auto key = [](int a, int b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; };
    std::map<EdgeKey, std::vector<int>> edge_tris;
    auto link = [&](int t) {
        for (int k = 0; k < 3; ++k) edge_tris[key(mesh.tris[t][k], mesh.tris[t][(k + 1) % 3])].push_back(t);
    };
    auto unlink = [&](int t) {
        for (int k = 0; k < 3; ++k) {
            auto& v = edge_tris[key(mesh.tris[t][k], mesh.tris[t][(k + 1) % 3])];
            std::erase(v, t);
        }
    };
    auto side = [&](int t, int k) {
        return distance(mesh.points[mesh.tris[t][k]], mesh.points[mesh.tris[t][(k + 1) % 3]]);
    };
    // Longest side of t, lowest edge index on ties.
    auto longest = [&](int t) {
        int best = 0;
        for (int k = 1; k < 3; ++k) {
            if (side(t, k) > side(t, best)) best = k;
        }
        return best;
    };
    for (int t = 0; t < static_cast<int>(mesh.tris.size()); ++t) link(t);

    std::vector<double> longest_len(mesh.tris.size());
    for (std::size_t t = 0; t < mesh.tris.size(); ++t) longest_len[t] = side(static_cast<int>(t), longest(static_cast<int>(t)));

    // Split triangle t along its edge k at vertex m: t keeps the first half.
    auto split = [&](int t, int k, int m) {
        const auto tri = mesh.tris[t];
        const int a = tri[k], b = tri[(k + 1) % 3], c = tri[(k + 2) % 3];
        unlink(t);
        mesh.tris[t] = {a, m, c};
        mesh.tris.push_back({m, b, c});
        const int u = static_cast<int>(mesh.tris.size()) - 1;
        link(t);
        link(u);
        longest_len[t] = side(t, longest(t));
        longest_len.push_back(side(u, longest(u)));
    };

    while (true) {
        int t = -1;
        for (int i = 0; i < static_cast<int>(mesh.tris.size()); ++i) {
            if (longest_len[i] > R && (t < 0 || longest_len[i] > longest_len[t])) t = i;
        }
        if (t < 0) break;
        const int k = longest(t);
        const int a = mesh.tris[t][k];
        const int b = mesh.tris[t][(k + 1) % 3];
        mesh.points.push_back((mesh.points[a] + mesh.points[b]) * 0.5);
        const int m = static_cast<int>(mesh.points.size()) - 1;
        const std::vector<int> sharing = edge_tris[key(a, b)];
        for (int s : sharing) {
            int ks = 0;
            while (key(mesh.tris[s][ks], mesh.tris[s][(ks + 1) % 3]) != key(a, b)) ++ks;
            split(s, ks, m);
        }
    }
    return detail::to_triangles(mesh);
}

}  // namespace losplan
