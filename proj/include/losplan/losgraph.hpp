#pragma once

#include <algorithm>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "losplan/geometry.hpp"
#include "losplan/triplet.hpp"

namespace losplan {

enum class Tier { Primary, Secondary, Trinary };

inline std::string_view to_string(Tier t) {
    switch (t) {
        case Tier::Primary: return "primary";
        case Tier::Secondary: return "secondary";
        case Tier::Trinary: return "trinary";
    }
    return "primary";
}

/// Simple undirected graph over partition triangle ids.
class LosGraph {
public:
    LosGraph() = default;
    LosGraph(std::vector<int> nodes, Tier tier) : nodes_(std::move(nodes)), tier_(tier) {
        std::sort(nodes_.begin(), nodes_.end());
        const int top = nodes_.empty() ? 0 : nodes_.back() + 1;
        adj_.assign(static_cast<std::size_t>(top), {});
        present_.assign(static_cast<std::size_t>(top), false);
        for (int n : nodes_) present_[n] = true;
    }

    Tier tier() const { return tier_; }
    void set_tier(Tier t) { tier_ = t; }
    const std::vector<int>& nodes() const { return nodes_; }
    std::size_t size() const { return nodes_.size(); }
    bool contains(int n) const { return n >= 0 && n < static_cast<int>(present_.size()) && present_[n]; }

    const std::vector<int>& neighbors(int n) const { return adj_.at(n); }
    int degree(int n) const { return static_cast<int>(adj_.at(n).size()); }

    bool adjacent(int a, int b) const {
        if (!contains(a) || !contains(b)) return false;
        return std::binary_search(adj_[a].begin(), adj_[a].end(), b);
    }

    void add_edge(int a, int b) {
        if (a == b || !contains(a) || !contains(b) || adjacent(a, b)) return;
        adj_[a].insert(std::upper_bound(adj_[a].begin(), adj_[a].end(), b), b);
        adj_[b].insert(std::upper_bound(adj_[b].begin(), adj_[b].end(), a), a);
    }

    void remove_edge(int a, int b) {
        if (!adjacent(a, b)) return;
        adj_[a].erase(std::lower_bound(adj_[a].begin(), adj_[a].end(), b));
        adj_[b].erase(std::lower_bound(adj_[b].begin(), adj_[b].end(), a));
    }

    std::size_t edge_count() const {
        std::size_t twice = 0;
        for (int n : nodes_) twice += adj_[n].size();
        return twice / 2;
    }

    /// Induced subgraph on `keep` (a subset of the current nodes).
    LosGraph induced(std::span<const int> keep, Tier tier) const {
        LosGraph out(std::vector<int>(keep.begin(), keep.end()), tier);
        for (int a : out.nodes_) {
            for (int b : adj_.at(a)) {
                if (a < b && out.contains(b)) out.add_edge(a, b);
            }
        }
        return out;
    }

    bool is_clique(std::span<const int> members) const {
        for (std::size_t i = 0; i < members.size(); ++i) {
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                if (!adjacent(members[i], members[j])) return false;
            }
        }
        return true;
    }

private:
    std::vector<int> nodes_;
    std::vector<std::vector<int>> adj_;
    std::vector<bool> present_;
    Tier tier_ = Tier::Primary;
};

/// Partition of a tier's graph into cliques, each with a non-empty placement area.
struct CliqueCover {
    std::vector<std::vector<int>> cliques;
    std::vector<Region> areas;
    Tier tier = Tier::Primary;
    /// Nodes no admissible clique could hold (even alone); reported, never silently dropped.
    std::vector<int> unplaceable;

    std::size_t size() const { return cliques.size(); }

    /// Index of the clique holding `node`, or -1.
    int clique_of(int node) const {
        for (std::size_t k = 0; k < cliques.size(); ++k) {
            if (std::find(cliques[k].begin(), cliques[k].end(), node) != cliques[k].end()) {
                return static_cast<int>(k);
            }
        }
        return -1;
    }
};

/// Edge (i, j) iff L(p_i) ∩ L(p_j) has area >= eps_area.
inline LosGraph build_primary_lg(std::span<const int> node_ids, std::span<const Region> los_areas,
                                 double eps_area = kDefaultEpsArea) {
    if (node_ids.size() != los_areas.size()) {
        throw Error(Error::Kind::Precondition, "triangle and LoS-area lists differ in length");
    }
    LosGraph g(std::vector<int>(node_ids.begin(), node_ids.end()), Tier::Primary);
    for (std::size_t i = 0; i < node_ids.size(); ++i) {
        for (std::size_t j = i + 1; j < node_ids.size(); ++j) {
            if (!los_areas[i].bounds().overlaps(los_areas[j].bounds())) continue;
            if (!intersect(los_areas[i], los_areas[j], eps_area).empty(eps_area)) {
                g.add_edge(node_ids[i], node_ids[j]);
            }
        }
    }
    return g;
}

namespace detail {

inline void check_partition(const LosGraph& g, const CliqueCover& cover) {
    std::vector<int> seen;
    for (const auto& c : cover.cliques) seen.insert(seen.end(), c.begin(), c.end());
    seen.insert(seen.end(), cover.unplaceable.begin(), cover.unplaceable.end());
    std::sort(seen.begin(), seen.end());
    if (seen != g.nodes()) {
        throw Error(Error::Kind::Precondition, "clique set is not a partition of the graph's nodes");
    }
}

}  // namespace detail

/// Secondary LoS graph: drops edge (i, j) when both ends share primary clique k and
/// L(p_i) ∩ L(p_j) lies inside the forbidden region F_{d_s}(A_k). `forbidden[k]` is
/// F_{d_s}(A_k) (see forbidden_region in planner.hpp).
inline LosGraph edge_elimination(const LosGraph& g1, const CliqueCover& primary,
                                 std::span<const Region> forbidden,
                                 const std::map<int, const Region*>& los_by_node,
                                 double eps_area = kDefaultEpsArea) {
    detail::check_partition(g1, primary);
    if (forbidden.size() != primary.size()) {
        throw Error(Error::Kind::Precondition, "one forbidden region per primary clique required");
    }
    LosGraph g2 = g1;
    g2.set_tier(Tier::Secondary);
    for (std::size_t k = 0; k < primary.size(); ++k) {
        const auto& members = primary.cliques[k];
        if (forbidden[k].empty(eps_area)) continue;
        for (std::size_t a = 0; a < members.size(); ++a) {
            for (std::size_t b = a + 1; b < members.size(); ++b) {
                const int i = members[a], j = members[b];
                if (!g1.adjacent(i, j)) continue;
                const Region overlap = intersect(*los_by_node.at(i), *los_by_node.at(j), eps_area);
                if (subtract(overlap, forbidden[k], eps_area).empty(eps_area)) g2.remove_edge(i, j);
            }
        }
    }
    return g2;
}

/// True iff some three of `prns` form a triplet.
inline bool contains_triplet(std::span<const Point> prns, double d_s, double theta_s_deg,
                             double eps_len = kDefaultEpsLen) {
    for (std::size_t i = 0; i < prns.size(); ++i) {
        for (std::size_t j = i + 1; j < prns.size(); ++j) {
            if (!is_twin(prns[i], prns[j], d_s, eps_len)) continue;
            for (std::size_t k = j + 1; k < prns.size(); ++k) {
                if (is_triplet(prns[i], prns[j], prns[k], d_s, theta_s_deg, eps_len)) return true;
            }
        }
    }
    return false;
}

/// Trinary LoS graph: the secondary graph minus every node whose LoS area already
/// holds a triplet of the placed PRNs; surviving edges are inherited unchanged.
inline LosGraph build_trinary_lg(const LosGraph& g2, std::span<const Point> placed,
                                 const std::map<int, const Region*>& los_by_node, double d_s,
                                 double theta_s_deg, double eps_len = kDefaultEpsLen) {
    if (placed.empty()) throw Error(Error::Kind::Precondition, "trinary graph needs a non-empty deployment");
    std::vector<int> keep;
    for (int n : g2.nodes()) {
        std::vector<Point> seen;
        for (const Point& q : placed) {
            if (point_in_region(q, *los_by_node.at(n), eps_len)) seen.push_back(q);
        }
        if (!contains_triplet(seen, d_s, theta_s_deg, eps_len)) keep.push_back(n);
    }
    return g2.induced(keep, Tier::Trinary);
}

}  // namespace losplan
