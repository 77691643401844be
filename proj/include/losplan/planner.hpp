#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "losplan/geometry.hpp"
#include "losplan/losgraph.hpp"
#include "losplan/partition.hpp"
#include "losplan/triplet.hpp"
#include "losplan/visibility.hpp"

namespace losplan {

struct Prn {
    Point at;
    Tier tier = Tier::Primary;
    int area = 0;  // clique index within its tier
};

struct Deployment {
    PlanConfig config;
    std::vector<Prn> prns;

    int count(Tier t) const {
        return static_cast<int>(std::count_if(prns.begin(), prns.end(), [t](const Prn& p) { return p.tier == t; }));
    }
    std::vector<Point> points() const {
        std::vector<Point> out;
        out.reserve(prns.size());
        for (const Prn& p : prns) out.push_back(p.at);
        return out;
    }
};

// ---------------------------------------------------------------------------
// Greedy maximal clique clustering

/// Admission policy used by greedy_mcc. `start(seed)` opens a cluster and returns
/// false when even the singleton has no placement area; `try_add(q)` extends the
/// running area if possible; `finish()` hands back the cluster's area.
template <class P>
concept AdmitPolicy = requires(P p, int node) {
    { p.start(node) } -> std::convertible_to<bool>;
    { p.try_add(node) } -> std::convertible_to<bool>;
    { p.finish() } -> std::convertible_to<Region>;
};

/// Always admits; turns greedy_mcc into a plain greedy clique cover.
struct AdmitAll {
    bool start(int) { return true; }
    bool try_add(int) { return true; }
    Region finish() { return {}; }
};

/// Repeatedly: sort the remaining nodes by (degree among remaining nodes, id),
/// seed with the first, scan the rest in that order adding every node that keeps
/// the cluster a clique and passes the policy, then remove the cluster.
template <AdmitPolicy Policy>
CliqueCover greedy_mcc(const LosGraph& g, Policy& policy, Tier tier) {
    CliqueCover cover;
    cover.tier = tier;
    const auto& nodes = g.nodes();
    const int top = nodes.empty() ? 0 : nodes.back() + 1;
    std::vector<char> alive(static_cast<std::size_t>(top), 0);
    for (int n : nodes) alive[n] = 1;
    std::vector<int> remaining = nodes;

    while (!remaining.empty()) {
        std::vector<std::pair<int, int>> order;
        order.reserve(remaining.size());
        for (int n : remaining) {
            int deg = 0;
            for (int m : g.neighbors(n)) deg += alive[m];
            order.emplace_back(deg, n);
        }
        std::sort(order.begin(), order.end());

        const int seed = order.front().second;
        std::vector<int> cluster{seed};
        alive[seed] = 0;
        if (!policy.start(seed)) {
            cover.unplaceable.push_back(seed);
        } else {
            for (std::size_t i = 1; i < order.size(); ++i) {
                const int q = order[i].second;
                const bool fits = std::all_of(cluster.begin(), cluster.end(), [&](int c) { return g.adjacent(c, q); });
                if (fits && policy.try_add(q)) {
                    cluster.push_back(q);
                    alive[q] = 0;
                }
            }
            cover.cliques.push_back(cluster);
            cover.areas.push_back(policy.finish());
        }
        std::erase_if(remaining, [&](int n) { return !alive[n]; });
    }
    return cover;
}

/// Node id -> LoS area lookup shared by the policies.
using AreaLookup = std::map<int, const Region*>;

namespace detail {

/// Primary admission: running intersection of member LoS areas.
struct PrimaryPolicy {
    const AreaLookup* areas;
    double eps_area;
    Region running;

    bool start(int seed) {
        running = *areas->at(seed);
        return !running.empty(eps_area);
    }
    bool try_add(int q) {
        Region next = intersect(running, *areas->at(q), eps_area);
        if (next.empty(eps_area)) return false;
        running = std::move(next);
        return true;
    }
    Region finish() { return std::move(running); }
};

}  // namespace detail

/// Primary cover: every clique has a non-empty common LoS area A_k = L(C_k).
inline CliqueCover primary_mcc(const LosGraph& g1, const AreaLookup& los, double eps_area = kDefaultEpsArea) {
    detail::PrimaryPolicy policy{&los, eps_area, {}};
    CliqueCover cover = greedy_mcc(g1, policy, Tier::Primary);
    for (std::size_t k = 0; k < cover.size(); ++k) cover.areas[k].tag("A1[" + std::to_string(k) + "]");
    return cover;
}

// ---------------------------------------------------------------------------
// Forbidden and well-spaced geometry

/// Points within d_s of every given point: the intersection of the disks around
/// the convex hull vertices (a disk is convex, so hull vertices suffice). Disks are
/// circumscribed polygons, so the result contains the true region.
inline Region forbidden_region(std::span<const Point> points, double d_s, const AreaOptions& opt = {}) {
    if (points.empty() || !(d_s > 0.0)) return {};
    const Ring verts = convex_hull(points);
    Region out = disk_region_outer({verts[0], d_s}, opt.arc_segments);
    for (std::size_t i = 1; i < verts.size() && !out.empty(opt.eps_area); ++i) {
        out = intersect(out, disk_region_outer({verts[i], d_s}, opt.arc_segments), opt.eps_area);
    }
    if (out.empty(opt.eps_area)) return {};
    return out.tag("F");
}

/// F_{d_s}(A): where a new PRN would be closer than d_s to every point of A.
inline Region forbidden_region(const Region& area, double d_s, const AreaOptions& opt = {}) {
    if (area.empty(opt.eps_area)) return {};
    return forbidden_region(area.vertices(), d_s, opt);
}

/// M(S1, C): areas of the primary cliques sharing a node with C.
inline std::vector<int> clique_mapping_indices(const CliqueCover& s1, std::span<const int> c) {
    std::vector<int> out;
    for (int node : c) {
        const int k = s1.clique_of(node);
        if (k < 0) {
            if (std::find(s1.unplaceable.begin(), s1.unplaceable.end(), node) != s1.unplaceable.end()) continue;
            throw Error(Error::Kind::Precondition, "clique node " + std::to_string(node) + " absent from the primary cover");
        }
        if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<Region> clique_mapping(const CliqueCover& s1, std::span<const int> c) {
    std::vector<Region> out;
    for (int k : clique_mapping_indices(s1, c)) out.push_back(s1.areas[k]);
    return out;
}

/// W_{d_s}(S1, C) = L(C) minus the forbidden regions of every mapped primary area.
inline Region well_spaced_area(const CliqueCover& s1, std::span<const int> c, const AreaLookup& los,
                               double d_s, const AreaOptions& opt = {}) {
    if (c.empty()) return {};
    Region w = *los.at(c[0]);
    for (std::size_t i = 1; i < c.size(); ++i) w = intersect(w, *los.at(c[i]), opt.eps_area);
    for (int k : clique_mapping_indices(s1, c)) {
        if (w.empty(opt.eps_area)) break;
        w = subtract(w, forbidden_region(s1.areas[k], d_s, opt), opt.eps_area);
    }
    return w.tag("W");
}

/// Points Q that form a triplet with the twin (qi, qj), clipped to `window`:
/// outside both d_s disks, outside the angle-theta_s double wedges at qi and qj,
/// and inside the two circles through qi, qj on which the chord subtends theta_s.
inline Region well_spaced_two_points(Point qi, Point qj, double d_s, double theta_s_deg, const Box& window,
                                     const AreaOptions& opt = {}) {
    const double len = distance(qi, qj);
    if (len < d_s - opt.eps_len) throw Error(Error::Kind::Precondition, "well-spaced area needs a twin (|QiQj| >= d_s)");
    if (len <= opt.eps_len) return {};
    Region w = Region::from_box(window);
    if (d_s > 0.0) {
        w = subtract(w, disk_region_outer({qi, d_s}, opt.arc_segments), opt.eps_area);
        w = subtract(w, disk_region_outer({qj, d_s}, opt.arc_segments), opt.eps_area);
    }
    if (theta_s_deg > 0.0) {
        const double th = deg_to_rad(theta_s_deg);
        const double reach = 2.0 * (window.diagonal() + distance(window.center(), qi) + distance(window.center(), qj)) + 1.0;
        const Point axis = normalized(qj - qi);
        for (const auto& [apex, dir] : {std::pair{qi, axis}, std::pair{qj, axis * -1.0}}) {
            for (const Point d : {dir, dir * -1.0}) {
                w = subtract(w, wedge_region(apex, rotated(d, th), rotated(d, -th), reach), opt.eps_area);
            }
        }
        const double rho = len / (2.0 * std::sin(th));
        const Point mid = (qi + qj) * 0.5;
        const Point nrm{-axis.y, axis.x};
        const Region lens = unite(disk_region({mid + nrm * (rho * std::cos(th)), rho}, opt.arc_segments),
                                  disk_region({mid - nrm * (rho * std::cos(th)), rho}, opt.arc_segments), opt.eps_area);
        w = intersect(w, lens, opt.eps_area);
    }
    return w.tag("W2");
}

// ---------------------------------------------------------------------------
// Secondary tier

namespace detail {

/// Secondary admission: W <- (W ∩ L(q)) − F(A_k(q)), and, when primary PRNs are
/// already placed, also minus the d_s disk around the mapped primary PRN.
struct SecondaryPolicy {
    const CliqueCover* s1;
    const AreaLookup* los;
    std::span<const Region> forbidden;  // per primary clique, including the placed-PRN disk
    double eps_area;
    Region running;
    std::vector<int> mapped;

    Region cut(Region w, int node) {
        const int k = s1->clique_of(node);
        if (k < 0 || std::find(mapped.begin(), mapped.end(), k) != mapped.end()) return w;
        mapped.push_back(k);
        return subtract(w, forbidden[k], eps_area);
    }
    bool start(int seed) {
        mapped.clear();
        running = cut(*los->at(seed), seed);
        return !running.empty(eps_area);
    }
    bool try_add(int q) {
        const auto saved = mapped;
        Region next = cut(intersect(running, *los->at(q), eps_area), q);
        if (next.empty(eps_area)) {
            mapped = saved;
            return false;
        }
        running = std::move(next);
        return true;
    }
    Region finish() { return std::move(running); }
};

}  // namespace detail

/// Per primary clique, the region a secondary PRN serving that clique must avoid:
/// F_{d_s}(A_k), plus the d_s disk around the placed primary PRN when given.
inline std::vector<Region> secondary_exclusions(const CliqueCover& s1, std::span<const Point> primary_prns,
                                                double d_s, const AreaOptions& opt = {}) {
    std::vector<Region> out;
    for (std::size_t k = 0; k < s1.size(); ++k) {
        Region f = forbidden_region(s1.areas[k], d_s, opt);
        if (k < primary_prns.size() && d_s > 0.0) {
            f = unite(f, disk_region_outer({primary_prns[k], d_s}, opt.arc_segments), opt.eps_area);
        }
        out.push_back(std::move(f));
    }
    return out;
}

inline CliqueCover secondary_mcc(const LosGraph& g2, const CliqueCover& s1, const AreaLookup& los, double d_s,
                                 std::span<const Point> primary_prns = {}, const AreaOptions& opt = {}) {
    const std::vector<Region> excl = secondary_exclusions(s1, primary_prns, d_s, opt);
    detail::SecondaryPolicy policy{&s1, &los, excl, opt.eps_area, {}, {}};
    CliqueCover cover = greedy_mcc(g2, policy, Tier::Secondary);
    for (std::size_t k = 0; k < cover.size(); ++k) cover.areas[k].tag("A2[" + std::to_string(k) + "]");
    return cover;
}

// ---------------------------------------------------------------------------
// Trinary tier

namespace detail {

/// Trinary admission. For each node the first twin (Qi, Qj) of placed PRNs inside
/// L(q) (ascending i, then j) whose well-spaced area keeps the running area
/// non-empty is committed and never revisited.
struct TrinaryPolicy {
    const AreaLookup* los;
    std::span<const Point> placed;
    double d_s;
    double theta_s;
    Box window;
    AreaOptions opt;
    std::map<std::pair<int, int>, Region> pair_cache;
    Region running;
    std::vector<std::pair<int, int>> committed;  // this cluster's pairs

    const Region& pair_area(int i, int j) {
        auto it = pair_cache.find({i, j});
        if (it == pair_cache.end()) {
            it = pair_cache.emplace(std::pair{i, j}, well_spaced_two_points(placed[i], placed[j], d_s, theta_s, window, opt)).first;
        }
        return it->second;
    }

    std::optional<std::pair<Region, std::pair<int, int>>> admit(const Region& base, int q) {
        const Region& lq = *los->at(q);
        std::vector<int> seen;
        for (int i = 0; i < static_cast<int>(placed.size()); ++i) {
            if (point_in_region(placed[i], lq, opt.eps_len)) seen.push_back(i);
        }
        for (std::size_t a = 0; a < seen.size(); ++a) {
            for (std::size_t b = a + 1; b < seen.size(); ++b) {
                const int i = seen[a], j = seen[b];
                if (!is_twin(placed[i], placed[j], d_s, opt.eps_len)) continue;
                Region next = intersect(base, pair_area(i, j), opt.eps_area);
                if (!next.empty(opt.eps_area)) return std::pair{std::move(next), std::pair{i, j}};
            }
        }
        return std::nullopt;
    }

    bool start(int seed) {
        committed.clear();
        auto got = admit(*los->at(seed), seed);
        if (!got) return false;
        running = std::move(got->first);
        committed.push_back(got->second);
        return true;
    }
    bool try_add(int q) {
        Region base = intersect(running, *los->at(q), opt.eps_area);
        if (base.empty(opt.eps_area)) return false;
        auto got = admit(base, q);
        if (!got) return false;
        running = std::move(got->first);
        committed.push_back(got->second);
        return true;
    }
    Region finish() { return std::move(running); }
};

}  // namespace detail

struct TrinaryCover {
    CliqueCover cover;
    /// Per clique, the committed twin PRN indices (into the placed list), one per member.
    std::vector<std::vector<std::pair<int, int>>> pairs;
};

inline TrinaryCover trinary_mcc(const LosGraph& g3, std::span<const Point> placed, const AreaLookup& los, double d_s,
                                double theta_s_deg, const Box& window, const AreaOptions& opt = {}) {
    detail::TrinaryPolicy policy{&los, placed, d_s, theta_s_deg, window, opt, {}, {}, {}};
    // Wrap to capture the committed pairs per finished cluster.
    struct Recording {
        detail::TrinaryPolicy* inner;
        std::vector<std::vector<std::pair<int, int>>>* log;
        bool start(int s) { return inner->start(s); }
        bool try_add(int q) { return inner->try_add(q); }
        Region finish() {
            log->push_back(inner->committed);
            return inner->finish();
        }
    };
    TrinaryCover out;
    Recording rec{&policy, &out.pairs};
    out.cover = greedy_mcc(g3, rec, Tier::Trinary);
    for (std::size_t k = 0; k < out.cover.size(); ++k) out.cover.areas[k].tag("A3[" + std::to_string(k) + "]");
    return out;
}

// ---------------------------------------------------------------------------
// Placement

namespace detail {

/// Area vertices nudged a hair inward, then a centred bounding-box grid at
/// resolution max(eps_len, diag/64), all filtered by membership.
inline std::vector<Point> placement_candidates(const Region& area, double eps_len) {
    std::vector<Point> out;
    const Box& b = area.bounds();
    const double diag = b.diagonal();
    const double nudge = std::max(10.0 * eps_len, 1e-6 * diag);
    // Interior with a margin above the overlay grid, so rounding never flips membership.
    auto inside = [&](Point p) { return region_contains(area, p) && boundary_distance(p, area) > 10.0 * eps_len; };
    for (const Ring& ring : area.rings()) {
        const std::size_t n = ring.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point prev = ring[(i + n - 1) % n], v = ring[i], next = ring[(i + 1) % n];
            // Fill lies to the left of both CCW outer and CW hole edges.
            const Point e1 = normalized(v - prev), e2 = normalized(next - v);
            const Point inward = normalized(Point{-e1.y, e1.x} + Point{-e2.y, e2.x});
            const Point p = v + inward * nudge;
            if (inside(p)) {
                out.push_back(p);
            } else if (point_in_region(v, area, eps_len)) {
                out.push_back(v);
            }
        }
    }
    const double step = std::max(eps_len, diag / 64.0);
    const int nx = static_cast<int>(std::floor(b.width() / step)) + 1;
    const int ny = static_cast<int>(std::floor(b.height() / step)) + 1;
    const double ox = b.min.x + 0.5 * (b.width() - (nx - 1) * step);
    const double oy = b.min.y + 0.5 * (b.height() - (ny - 1) * step);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const Point p{ox + i * step, oy + j * step};
            if (inside(p)) out.push_back(p);
        }
    }
    return out;
}

}  // namespace detail

/// One PRN inside `area`. Without related points: the deepest candidate (nearest
/// the area centroid on ties). Otherwise: the candidate maximizing the minimum
/// distance to the related points.
inline Point place_in_area(const Region& area, std::span<const Point> related, double eps_len = kDefaultEpsLen) {
    if (area.empty(0.0)) throw Error(Error::Kind::Precondition, "cannot place a PRN in an empty area");
    const std::vector<Point> cands = detail::placement_candidates(area, eps_len);
    if (cands.empty()) return region_centroid(area);
    if (related.empty()) {
        const Point centre = region_centroid(area);
        Point best = cands.front();
        double best_depth = -1.0, best_dc = 0.0;
        for (const Point& p : cands) {
            const double d = depth_in_region(p, area);
            const double dc = distance(p, centre);
            if (d > best_depth + eps_len || (std::abs(d - best_depth) <= eps_len && dc < best_dc)) {
                best = p;
                best_depth = d;
                best_dc = dc;
            }
        }
        return best;
    }
    Point best = cands.front();
    double best_score = -1.0;
    for (const Point& p : cands) {
        double score = kUnbounded;
        for (const Point& q : related) score = std::min(score, distance(p, q));
        if (score > best_score) {
            best = p;
            best_score = score;
        }
    }
    return best;
}

inline std::vector<Point> place_prns(const CliqueCover& cover, const std::vector<std::vector<Point>>& related,
                                     double eps_len = kDefaultEpsLen) {
    std::vector<Point> out;
    out.reserve(cover.size());
    for (std::size_t k = 0; k < cover.size(); ++k) {
        const std::span<const Point> rel = k < related.size() ? std::span<const Point>(related[k]) : std::span<const Point>();
        out.push_back(place_in_area(cover.areas[k], rel, eps_len));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Hidden set (lower bound)

struct HiddenSet {
    int t = 0;
    std::vector<Point> witnesses;
};

/// Greedy hidden set over triangle centroids, smallest LoS area first: a centroid
/// joins when its LoS area stays more than eps_len away from every chosen one.
/// Areas use the circumscribed range polygon so "disjoint" holds for the true disks.
inline HiddenSet hidden_set_lower_bound(const Layout& layout, std::span<const Triangle> triangles, double r,
                                        const AreaOptions& opt = {}) {
    const double r_outer = is_unbounded(r) ? r : r / std::cos(kPi / opt.arc_segments);
    struct Cand {
        double area;
        int id;
        Point p;
        Region los;
    };
    std::vector<Cand> cands;
    for (const Triangle& t : triangles) {
        const Point c = t.centroid();
        if (!point_in_layout(layout, c, opt.eps_len)) continue;
        Region los = los_area_point(layout, c, r_outer, opt).region;
        cands.push_back({los.area(), t.id, c, std::move(los)});
    }
    std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        return a.area != b.area ? a.area < b.area : a.id < b.id;
    });
    HiddenSet out;
    std::vector<const Region*> chosen;
    for (const Cand& c : cands) {
        bool apart = true;
        for (const Region* other : chosen) {
            const Box& a = c.los.bounds();
            const Box& b = other->bounds();
            if (!a.overlaps(b, opt.eps_len)) continue;
            if (region_distance(c.los, *other) <= opt.eps_len) {
                apart = false;
                break;
            }
        }
        if (apart) {
            chosen.push_back(&c.los);
            out.witnesses.push_back(c.p);
        }
    }
    out.t = static_cast<int>(out.witnesses.size());
    return out;
}

// ---------------------------------------------------------------------------
// End-to-end

struct PlanReport {
    int triangles = 0;
    int g = 0, g2 = 0, g3 = 0;
    HiddenSet hidden;
    bool bound_1 = true;  // t <= g
    bool bound_2 = true;  // 2t <= g + g2 (n >= 2)
    bool bound_3 = true;  // 3t <= g + g2 + g3 (n == 3)
    bool provably_optimal = false;
    std::vector<int> unplaceable;  // triangle ids no tier could serve

    int total() const { return g + g2 + g3; }
};

struct PlanResult {
    Deployment deployment;
    PlanReport report;
    std::vector<Triangle> triangles;
    std::vector<Region> los;  // by triangle id
    LosGraph g1, g2, g3;
    CliqueCover primary, secondary, trinary;
};

namespace detail {

/// Primary PRN area for n >= 2: A_k minus, for every member p, the points within
/// d_s of all of L(p), so each member keeps room for a twin partner.
inline Region twin_ready_area(const CliqueCover& s1, int k, const AreaLookup& los, double d_s,
                              const AreaOptions& opt) {
    Region area = s1.areas[k];
    if (!(d_s > 0.0)) return area;
    for (int p : s1.cliques[k]) {
        Region next = subtract(area, forbidden_region(*los.at(p), d_s, opt), opt.eps_area);
        if (next.empty(opt.eps_area)) return s1.areas[k];
        area = std::move(next);
    }
    return area;
}

/// Helper PRN for a node no placed twin can serve: the first candidate X of L(q)
/// (nearest first, per placed PRN Qi inside L(q)) with |QiX| >= d_s whose
/// two-point well-spaced area still meets L(q).
inline std::optional<Point> triplet_helper(const Region& lq, std::span<const Point> placed, double d_s,
                                           double theta_s_deg, const Box& window, const AreaOptions& opt,
                                           std::size_t max_tests = 256) {
    const std::vector<Point> cands = placement_candidates(lq, opt.eps_len);
    for (const Point& qi : placed) {
        if (!point_in_region(qi, lq, opt.eps_len)) continue;
        std::vector<std::pair<double, Point>> order;
        for (const Point& x : cands) {
            const double d = distance(qi, x);
            if (d >= d_s + opt.eps_len) order.emplace_back(d, x);
        }
        std::stable_sort(order.begin(), order.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
        if (order.size() > max_tests) {
            // Thin out evenly so far candidates still get a chance.
            std::vector<std::pair<double, Point>> thin;
            for (std::size_t i = 0; i < max_tests; ++i) thin.push_back(order[i * order.size() / max_tests]);
            order = std::move(thin);
        }
        for (const auto& [d, x] : order) {
            const Region w = intersect(lq, well_spaced_two_points(qi, x, d_s, theta_s_deg, window, opt), opt.eps_area);
            if (!w.empty(opt.eps_area)) return x;
        }
    }
    return std::nullopt;
}

}  // namespace detail

inline PlanResult plan(const Layout& layout, const PlanConfig& cfg) {
    cfg.check();
    const AreaOptions opt = area_options(cfg);
    PlanResult res;
    res.deployment.config = cfg;

    res.triangles = hyper_triangulate(layout, cfg.effective_ht_R(), cfg.eps_len, cfg.eps_area);
    LosCache cache(layout, cfg.range_r, opt);
    std::vector<int> ids;
    for (const Triangle& t : res.triangles) {
        ids.push_back(t.id);
        res.los.push_back(cache.triangle_area(t));
    }
    AreaLookup los;
    for (const Triangle& t : res.triangles) los[t.id] = &res.los[t.id];

    res.g1 = build_primary_lg(ids, res.los, cfg.eps_area);
    res.primary = primary_mcc(res.g1, los, cfg.eps_area);

    std::vector<Point> primary_pts;
    for (std::size_t k = 0; k < res.primary.size(); ++k) {
        const Region area = cfg.coverage_n >= 2 ? detail::twin_ready_area(res.primary, static_cast<int>(k), los, cfg.msd_ds, opt)
                                                : res.primary.areas[k];
        primary_pts.push_back(place_in_area(area, {}, cfg.eps_len));
        res.deployment.prns.push_back({primary_pts.back(), Tier::Primary, static_cast<int>(k)});
    }
    std::vector<int> unplaceable = res.primary.unplaceable;

    if (cfg.coverage_n >= 2) {
        std::vector<Region> forbidden;
        for (const Region& a : res.primary.areas) forbidden.push_back(forbidden_region(a, cfg.msd_ds, opt));
        res.g2 = edge_elimination(res.g1, res.primary, forbidden, los, cfg.eps_area);
        res.secondary = secondary_mcc(res.g2, res.primary, los, cfg.msd_ds, primary_pts, opt);
        for (std::size_t k = 0; k < res.secondary.size(); ++k) {
            std::vector<Point> related;
            for (int m : clique_mapping_indices(res.primary, res.secondary.cliques[k])) related.push_back(primary_pts[m]);
            const Point q = place_in_area(res.secondary.areas[k], related, cfg.eps_len);
            res.deployment.prns.push_back({q, Tier::Secondary, static_cast<int>(k)});
        }
        unplaceable.insert(unplaceable.end(), res.secondary.unplaceable.begin(), res.secondary.unplaceable.end());
    }

    if (cfg.coverage_n == 3) {
        const std::vector<Point> placed = res.deployment.points();
        res.g3 = build_trinary_lg(res.g2, placed, los, cfg.msd_ds, cfg.msa_thetas, cfg.eps_len);
        Box window = layout.bounds();
        std::vector<Point> known = placed;
        res.trinary = CliqueCover{{}, {}, Tier::Trinary, {}};
        auto absorb = [&](const TrinaryCover& tc, std::span<const Point> pts) {
            for (std::size_t k = 0; k < tc.cover.size(); ++k) {
                std::vector<Point> related;
                for (const auto& [i, j] : tc.pairs[k]) {
                    for (int idx : {i, j}) {
                        if (std::find(related.begin(), related.end(), pts[idx]) == related.end()) related.push_back(pts[idx]);
                    }
                }
                const Point q = place_in_area(tc.cover.areas[k], related, cfg.eps_len);
                res.deployment.prns.push_back({q, Tier::Trinary, static_cast<int>(res.trinary.size())});
                res.trinary.cliques.push_back(tc.cover.cliques[k]);
                res.trinary.areas.push_back(tc.cover.areas[k]);
                known.push_back(q);
            }
        };
        TrinaryCover tc = trinary_mcc(res.g3, placed, los, cfg.msd_ds, cfg.msa_thetas, window, opt);
        absorb(tc, placed);
        // Nodes whose placed twins all line up badly get a helper PRN, then another round.
        std::vector<int> pending = tc.cover.unplaceable;
        std::sort(pending.begin(), pending.end());
        while (!pending.empty()) {
            const int q = pending.front();
            const auto helper = detail::triplet_helper(*los.at(q), known, cfg.msd_ds, cfg.msa_thetas, window, opt);
            if (!helper) {
                res.trinary.unplaceable.push_back(q);
                pending.erase(pending.begin());
                continue;
            }
            known.push_back(*helper);
            const std::vector<Point> pts = known;
            tc = trinary_mcc(res.g3.induced(pending, Tier::Trinary), pts, los, cfg.msd_ds, cfg.msa_thetas, window, opt);
            int helper_area = -1;
            for (std::size_t k = 0; k < tc.cover.size() && helper_area < 0; ++k) {
                const auto& c = tc.cover.cliques[k];
                if (std::find(c.begin(), c.end(), q) != c.end()) helper_area = static_cast<int>(res.trinary.size() + k);
            }
            res.deployment.prns.push_back({*helper, Tier::Trinary, helper_area});
            absorb(tc, pts);
            pending = tc.cover.unplaceable;
            std::sort(pending.begin(), pending.end());
            if (helper_area < 0) {
                res.trinary.unplaceable.push_back(q);
                std::erase(pending, q);
            }
        }
        unplaceable.insert(unplaceable.end(), res.trinary.unplaceable.begin(), res.trinary.unplaceable.end());
    }

    std::sort(unplaceable.begin(), unplaceable.end());
    unplaceable.erase(std::unique(unplaceable.begin(), unplaceable.end()), unplaceable.end());

    PlanReport& rep = res.report;
    rep.triangles = static_cast<int>(res.triangles.size());
    rep.g = res.deployment.count(Tier::Primary);
    rep.g2 = res.deployment.count(Tier::Secondary);
    rep.g3 = res.deployment.count(Tier::Trinary);
    rep.hidden = hidden_set_lower_bound(layout, res.triangles, cfg.range_r, opt);
    const int t = rep.hidden.t;
    rep.bound_1 = t <= rep.g;
    rep.bound_2 = cfg.coverage_n < 2 || 2 * t <= rep.g + rep.g2;
    rep.bound_3 = cfg.coverage_n < 3 || 3 * t <= rep.total();
    rep.provably_optimal = unplaceable.empty() && cfg.coverage_n * t == rep.total();
    rep.unplaceable = std::move(unplaceable);
    return res;
}

}  // namespace losplan
