#pragma once

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "losplan/point.hpp"

namespace losplan {

/// Error raised by every fallible operation in the library.
class Error : public std::runtime_error {
public:
    enum class Kind { Parse, Validation, Precondition, Infeasible };

    Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// A floor plan in meters: CCW outer ring and CW hole rings (walls, pillars).
struct Layout {
    std::string name;
    Ring outer;
    std::vector<Ring> holes;

    friend bool operator==(const Layout&, const Layout&) = default;

    double area() const {
        double a = std::abs(signed_area(outer));
        for (const Ring& h : holes) a -= std::abs(signed_area(h));
        return a;
    }
    Box bounds() const { return bounds_of(outer); }

    /// Outer ring first, then holes.
    std::vector<std::span<const Point>> rings() const {
        std::vector<std::span<const Point>> out;
        out.reserve(holes.size() + 1);
        out.emplace_back(outer);
        for (const Ring& h : holes) out.emplace_back(h);
        return out;
    }

    std::size_t vertex_count() const {
        std::size_t n = outer.size();
        for (const Ring& h : holes) n += h.size();
        return n;
    }
};

inline constexpr double kDefaultEpsLen = 1e-9;
inline constexpr double kDefaultEpsArea = 1e-9;

/// Closed membership: boundary points (within `eps`) count as inside.
inline bool point_in_layout(const Layout& layout, Point p, double eps = kDefaultEpsLen) {
    if (!ring_contains(layout.outer, p) && ring_boundary_distance(layout.outer, p) > eps) {
        return false;
    }
    for (const Ring& h : layout.holes) {
        if (ring_contains(h, p) && ring_boundary_distance(h, p) > eps) return false;
    }
    return true;
}

/// Planner configuration. Angles are stored in degrees; lengths in meters.
struct PlanConfig {
    double range_r = kUnbounded;
    double msd_ds = 0.0;
    double msa_thetas = 0.0;
    int coverage_n = 1;
    double ht_R = kUnbounded;
    int arc_segments = 64;
    double eps_area = kDefaultEpsArea;
    double eps_len = kDefaultEpsLen;
    std::uint64_t seed = 0;

    friend bool operator==(const PlanConfig&, const PlanConfig&) = default;

    /// Side-length bound actually used for hyper-triangulation. With a finite range
    /// the bound is capped at r so every triangle keeps a non-empty LoS area.
    double effective_ht_R() const {
        return is_unbounded(range_r) ? ht_R : std::min(ht_R, range_r);
    }

    void check() const {
        auto fail = [](const std::string& msg) { throw Error(Error::Kind::Infeasible, msg); };
        if (coverage_n < 1 || coverage_n > 3) fail("coverage_n must be 1, 2 or 3");
        if (!(range_r > 0.0)) fail("range_r must be positive");
        if (!(msd_ds >= 0.0)) fail("msd_ds must be non-negative");
        if (!is_unbounded(range_r) && msd_ds > 2.0 * range_r) {
            fail("infeasible MSD: msd_ds exceeds 2 * range_r");
        }
        if (!(msa_thetas >= 0.0 && msa_thetas <= 60.0)) fail("msa_thetas must lie in [0, 60] degrees");
        if (!(ht_R > eps_len)) fail("ht_R must exceed eps_len");
        if (arc_segments < 8) fail("arc_segments must be at least 8");
        if (!(eps_len > 0.0) || !(eps_area > 0.0)) fail("tolerances must be positive");
    }
};

struct Diagnostic {
    std::string code;     // e.g. "self-intersection", "hole-not-strictly-inside"
    int ring = 0;         // 0 = outer, k = hole k-1
    std::vector<int> vertices;
    std::string message;
};

namespace detail {

inline std::string ring_name(int ring) {
    return ring == 0 ? std::string("outer") : "hole " + std::to_string(ring - 1);
}

inline void check_simple(std::span<const Point> ring, int ring_id, double eps,
                         std::vector<Diagnostic>& out) {
    const int n = static_cast<int>(ring.size());
    for (int i = 0; i < n; ++i) {
        const int i1 = (i + 1) % n;
        for (int j = i + 1; j < n; ++j) {
            const int j1 = (j + 1) % n;
            const bool adjacent = (j == i1) || (i == j1);
            const Point a = ring[i], b = ring[i1], c = ring[j], d = ring[j1];
            bool bad = false;
            if (adjacent) {
                // Adjacent edges share a vertex; they must not fold back onto each other.
                const Point shared = (j == i1) ? b : a;
                const Point p = (j == i1) ? a : b;
                const Point q = (j == i1) ? d : c;
                bad = std::abs(side_distance(shared, p, q)) <= eps &&
                      dot(p - shared, q - shared) > 0.0;
            } else {
                bad = segments_touch(a, b, c, d, eps);
            }
            if (bad) {
                std::ostringstream msg;
                msg << "self-intersection in " << ring_name(ring_id) << " at edge pair (" << i << ","
                    << i1 << ")x(" << j << "," << j1 << ")";
                out.push_back({"self-intersection", ring_id, {i, i1, j, j1}, msg.str()});
            }
        }
    }
}

}  // namespace detail

/// Checks every Layout invariant and reports each violation; empty means valid.
inline std::vector<Diagnostic> validate_layout(const Layout& layout, double eps = kDefaultEpsLen) {
    std::vector<Diagnostic> out;
    const auto rings = layout.rings();
    std::vector<bool> simple(rings.size(), false);

    for (std::size_t r = 0; r < rings.size(); ++r) {
        const int rid = static_cast<int>(r);
        if (rings[r].size() < 3) {
            out.push_back({"too-few-vertices", rid, {},
                           detail::ring_name(rid) + " has fewer than 3 vertices"});
            continue;
        }
        const std::size_t before = out.size();
        detail::check_simple(rings[r], rid, eps, out);
        simple[r] = out.size() == before;
        if (!simple[r]) continue;
        const double a = signed_area(rings[r]);
        if (std::abs(a) <= eps * eps) {
            out.push_back({"zero-area", rid, {}, detail::ring_name(rid) + " encloses no area"});
        } else if ((r == 0) != (a > 0.0)) {
            out.push_back({"orientation", rid, {},
                           detail::ring_name(rid) + (r == 0 ? " must be counter-clockwise"
                                                             : " must be clockwise")});
        }
    }

    for (std::size_t h = 1; h < rings.size(); ++h) {
        const int rid = static_cast<int>(h);
        const auto hole = rings[h];
        if (hole.size() < 3 || rings[0].size() < 3) continue;
        std::vector<int> offending;
        for (std::size_t i = 0; i < hole.size(); ++i) {
            const bool inside = ring_contains(rings[0], hole[i]) &&
                                ring_boundary_distance(rings[0], hole[i]) > eps;
            if (!inside) offending.push_back(static_cast<int>(i));
        }
        bool touches = false;
        for (std::size_t i = 0; i < hole.size() && !touches; ++i) {
            for (std::size_t j = 0; j < rings[0].size() && !touches; ++j) {
                touches = segments_touch(hole[i], hole[(i + 1) % hole.size()], rings[0][j],
                                         rings[0][(j + 1) % rings[0].size()], eps);
            }
        }
        if (!offending.empty() || touches) {
            out.push_back({"hole-not-strictly-inside", rid, offending,
                           detail::ring_name(rid) + " is not strictly inside the outer ring"});
        }
        for (std::size_t g = h + 1; g < rings.size(); ++g) {
            const auto other = rings[g];
            if (other.size() < 3) continue;
            bool overlap = ring_contains(other, hole[0]) || ring_contains(hole, other[0]);
            for (std::size_t i = 0; i < hole.size() && !overlap; ++i) {
                for (std::size_t j = 0; j < other.size() && !overlap; ++j) {
                    overlap = segments_touch(hole[i], hole[(i + 1) % hole.size()], other[j],
                                             other[(j + 1) % other.size()], eps);
                }
            }
            if (overlap) {
                out.push_back({"holes-overlap", rid, {static_cast<int>(g) - 1},
                               detail::ring_name(rid) + " overlaps " +
                                   detail::ring_name(static_cast<int>(g))});
            }
        }
    }
    return out;
}

inline std::string format_diagnostics(const std::vector<Diagnostic>& diags) {
    std::string s;
    for (const Diagnostic& d : diags) {
        if (!s.empty()) s += "; ";
        s += d.message;
    }
    return s;
}

namespace detail {

inline Ring parse_ring(const nlohmann::json& j, double eps, const std::string& what) {
    if (!j.is_array()) throw Error(Error::Kind::Parse, what + " must be an array of [x, y]");
    Ring ring;
    for (const auto& pt : j) {
        if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number() || !pt[1].is_number()) {
            throw Error(Error::Kind::Parse, what + " contains a malformed point");
        }
        const Point p{pt[0].get<double>(), pt[1].get<double>()};
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw Error(Error::Kind::Parse, what + " contains a non-finite coordinate");
        }
        if (!ring.empty() && distance(ring.back(), p) <= eps) continue;
        ring.push_back(p);
    }
    while (ring.size() > 1 && distance(ring.front(), ring.back()) <= eps) ring.pop_back();
    if (ring.size() < 3) {
        throw Error(Error::Kind::Validation, what + " degenerates below 3 vertices");
    }
    return ring;
}

}  // namespace detail

/// Parses the floor-plan JSON format, collapses duplicate consecutive vertices,
/// normalizes orientation (outer CCW, holes CW), then validates.
inline Layout parse_layout(std::string_view text, double eps_len = kDefaultEpsLen) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(Error::Kind::Parse, std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("outer")) {
        throw Error(Error::Kind::Parse, "layout must be an object with an \"outer\" ring");
    }
    Layout layout;
    if (j.contains("name")) {
        if (!j["name"].is_string()) throw Error(Error::Kind::Parse, "\"name\" must be a string");
        layout.name = j["name"].get<std::string>();
    }
    layout.outer = detail::parse_ring(j["outer"], eps_len, "outer ring");
    if (j.contains("holes")) {
        if (!j["holes"].is_array()) throw Error(Error::Kind::Parse, "\"holes\" must be an array");
        for (std::size_t i = 0; i < j["holes"].size(); ++i) {
            layout.holes.push_back(
                detail::parse_ring(j["holes"][i], eps_len, "hole " + std::to_string(i)));
        }
    }
    if (signed_area(layout.outer) < 0.0) std::reverse(layout.outer.begin(), layout.outer.end());
    for (Ring& h : layout.holes) {
        if (signed_area(h) > 0.0) std::reverse(h.begin(), h.end());
    }
    const auto diags = validate_layout(layout, eps_len);
    if (!diags.empty()) throw Error(Error::Kind::Validation, format_diagnostics(diags));
    return layout;
}

inline nlohmann::json ring_to_json(const Ring& ring) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Point& p : ring) arr.push_back({p.x, p.y});
    return arr;
}

inline nlohmann::json layout_to_json(const Layout& layout) {
    nlohmann::json holes = nlohmann::json::array();
    for (const Ring& h : layout.holes) holes.push_back(ring_to_json(h));
    return {{"name", layout.name}, {"outer", ring_to_json(layout.outer)}, {"holes", holes}};
}

inline std::string serialize_layout(const Layout& layout) { return layout_to_json(layout).dump(2); }

}  // namespace losplan
