#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <thread>
#include <vector>

#include "losplan/geometry.hpp"
#include "losplan/planner.hpp"
#include "losplan/triplet.hpp"

namespace losplan {

/// SplitMix64 finalizer; a counter-based stream keyed on (seed, index, attempt).
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline double unit_double(std::uint64_t seed, std::uint64_t index, std::uint64_t attempt, std::uint64_t lane) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ index);
    h = splitmix64(h ^ (attempt * 2 + lane));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

/// Uniform point in the closed layout by rejection over the bounding box.
inline Point sample_layout_point(const Layout& layout, const Box& bounds, std::uint64_t seed, std::uint64_t index,
                                 double eps_len = kDefaultEpsLen) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        const Point p{bounds.min.x + unit_double(seed, index, attempt, 0) * bounds.width(),
                      bounds.min.y + unit_double(seed, index, attempt, 1) * bounds.height()};
        if (point_in_layout(layout, p, eps_len)) return p;
    }
}

enum class EvaPolicy { Best, First };

struct EvaSample {
    Point ue;
    bool covered = false;
    std::optional<std::array<int, 3>> served_triplet;
    double theta_e = std::numeric_limits<double>::quiet_NaN();
    bool inside_triangle = false;
    RegionClass region_class = RegionClass::None;
};

struct EvaReport {
    std::vector<EvaSample> samples;
    double coverage_fraction = 0.0;
    std::vector<std::pair<double, double>> cdf;  // (deviation from 90 degrees, fraction of EVA samples)

    /// Fraction of EVA-bearing samples with |90 - theta_E| strictly below `deg`.
    double fraction_within(double deg) const {
        int n = 0, hit = 0;
        for (const EvaSample& s : samples) {
            if (std::isnan(s.theta_e)) continue;
            ++n;
            hit += std::abs(90.0 - s.theta_e) < deg;
        }
        return n == 0 ? 0.0 : static_cast<double>(hit) / n;
    }
};

struct VerifyOptions {
    int n_samples = 100000;
    std::uint64_t seed = 0;
    EvaPolicy policy = EvaPolicy::Best;
    int threads = 1;
};

/// Indices of PRNs with clear, in-range sight of `ue`.
inline std::vector<int> visible_prns(const Layout& layout, Point ue, std::span<const Point> prns, double r,
                                     double eps_len = kDefaultEpsLen) {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(prns.size()); ++i) {
        if (!is_unbounded(r) && distance(ue, prns[i]) > r + eps_len) continue;
        if (!point_in_layout(layout, prns[i], eps_len)) continue;
        if (segment_clear(layout, ue, prns[i], eps_len)) out.push_back(i);
    }
    return out;
}

/// Evaluates one UE: coverage per n, and for n = 3 the EVA of the serving triplet.
inline EvaSample evaluate_ue(const Layout& layout, Point ue, std::span<const Point> prns, const PlanConfig& cfg,
                             EvaPolicy policy) {
    EvaSample s;
    s.ue = ue;
    const std::vector<int> vis = visible_prns(layout, ue, prns, cfg.range_r, cfg.eps_len);
    const double ds = cfg.msd_ds, eps = cfg.eps_len;
    switch (cfg.coverage_n) {
        case 1: s.covered = !vis.empty(); return s;
        case 2:
            for (std::size_t a = 0; a < vis.size() && !s.covered; ++a) {
                for (std::size_t b = a + 1; b < vis.size() && !s.covered; ++b) {
                    s.covered = is_twin(prns[vis[a]], prns[vis[b]], ds, eps);
                }
            }
            return s;
        default: break;
    }
    double best_dev = kUnbounded;
    bool stop = false;
    for (std::size_t a = 0; a < vis.size() && !stop; ++a) {
        for (std::size_t b = a + 1; b < vis.size() && !stop; ++b) {
            if (!is_twin(prns[vis[a]], prns[vis[b]], ds, eps)) continue;
            for (std::size_t c = b + 1; c < vis.size() && !stop; ++c) {
                const Point qi = prns[vis[a]], qj = prns[vis[b]], qk = prns[vis[c]];
                if (!is_triplet(qi, qj, qk, ds, cfg.msa_thetas, eps)) continue;
                s.covered = true;
                double th;
                try {
                    th = eva(ue, qi, qj, qk, eps);
                } catch (const Error&) {
                    continue;  // UE sitting on a PRN: no angle defined for this triplet
                }
                const double dev = std::abs(90.0 - th);
                if (dev < best_dev) {
                    best_dev = dev;
                    s.theta_e = th;
                    s.served_triplet = std::array<int, 3>{vis[a], vis[b], vis[c]};
                }
                stop = policy == EvaPolicy::First;
            }
        }
    }
    if (s.served_triplet) {
        const auto& t = *s.served_triplet;
        try {
            s.region_class = classify_exterior_region(ue, prns[t[0]], prns[t[1]], prns[t[2]], eps);
            s.inside_triangle = s.region_class == RegionClass::Inside;
        } catch (const Error&) {
            s.region_class = RegionClass::None;  // collinear triplet (theta_s = 0)
        }
    }
    return s;
}

/// Cumulative fraction of EVA samples with |90 - theta_E| <= d at d = 0, 1, ..., 90 degrees.
inline std::vector<std::pair<double, double>> eva_cdf(std::span<const EvaSample> samples) {
    std::vector<int> hist(91, 0);
    int n = 0;
    for (const EvaSample& s : samples) {
        if (std::isnan(s.theta_e)) continue;
        ++n;
        const double dev = std::abs(90.0 - s.theta_e);
        hist[std::clamp(static_cast<int>(std::ceil(dev - 1e-12)), 0, 90)]++;
    }
    std::vector<std::pair<double, double>> out;
    int acc = 0;
    for (int d = 0; d <= 90; ++d) {
        acc += hist[d];
        out.emplace_back(d, n == 0 ? 0.0 : static_cast<double>(acc) / n);
    }
    return out;
}

inline EvaReport verify_coverage(const Layout& layout, std::span<const Point> prns, const PlanConfig& cfg,
                                 const VerifyOptions& vo = {}) {
    if (vo.n_samples < 1) throw Error(Error::Kind::Precondition, "n_samples must be at least 1");
    if (!(layout.area() > cfg.eps_area)) throw Error(Error::Kind::Precondition, "layout has zero area");
    const Box bounds = layout.bounds();
    EvaReport rep;
    rep.samples.resize(static_cast<std::size_t>(vo.n_samples));
    auto work = [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            const Point ue = sample_layout_point(layout, bounds, vo.seed, static_cast<std::uint64_t>(i), cfg.eps_len);
            rep.samples[i] = evaluate_ue(layout, ue, prns, cfg, vo.policy);
        }
    };
    const int threads = std::clamp(vo.threads, 1, vo.n_samples);
    if (threads == 1) {
        work(0, vo.n_samples);
    } else {
        std::vector<std::jthread> pool;
        const int chunk = (vo.n_samples + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back(work, t * chunk, std::min(vo.n_samples, (t + 1) * chunk));
        }
    }
    int covered = 0;
    for (const EvaSample& s : rep.samples) covered += s.covered;
    rep.coverage_fraction = static_cast<double>(covered) / vo.n_samples;
    rep.cdf = eva_cdf(rep.samples);
    return rep;
}

inline EvaReport verify_coverage(const Layout& layout, const Deployment& dep, const PlanConfig& cfg,
                                 const VerifyOptions& vo = {}) {
    const std::vector<Point> pts = dep.points();
    return verify_coverage(layout, pts, cfg, vo);
}

namespace detail {

inline void write_num(std::ostream& os, double v) {
    if (std::isnan(v)) return;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    os << buf;
}

}  // namespace detail

inline void write_samples_csv(std::ostream& os, const EvaReport& rep) {
    os << "ue_x,ue_y,covered,theta_e_deg,region_class\n";
    for (const EvaSample& s : rep.samples) {
        detail::write_num(os, s.ue.x);
        os << ',';
        detail::write_num(os, s.ue.y);
        os << ',' << (s.covered ? 1 : 0) << ',';
        detail::write_num(os, s.theta_e);
        os << ',' << to_string(s.region_class) << '\n';
    }
}

inline void write_cdf_csv(std::ostream& os, const EvaReport& rep) {
    os << "deviation_deg,fraction\n";
    for (const auto& [d, f] : rep.cdf) {
        detail::write_num(os, d);
        os << ',';
        detail::write_num(os, f);
        os << '\n';
    }
}

}  // namespace losplan
