// losplan: partition | plan | verify | render
//
// Exit codes: 0 ok, 1 verification failed, 2 usage or validation error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "losplan/evaluate.hpp"
#include "losplan/io.hpp"
#include "losplan/planner.hpp"
#include "losplan/svg.hpp"

namespace {

using namespace losplan;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

double parse_length(const std::string& s, const char* flag) {
    if (s == "unbounded" || s == "inf" || s == "UNBOUNDED") return kUnbounded;
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw Error(Error::Kind::Parse, std::string(flag) + " expects a number or \"unbounded\", got \"" + s + "\"");
    }
}

int default_arc_segments() {
    if (const char* env = std::getenv("LOSPLAN_ARC_SEGMENTS")) {
        try {
            return std::stoi(env);
        } catch (const std::exception&) {
            throw Error(Error::Kind::Parse, "LOSPLAN_ARC_SEGMENTS must be an integer");
        }
    }
    return PlanConfig{}.arc_segments;
}

struct ConfigFlags {
    int n = 1;
    std::string r = "unbounded";
    double ds = 0.0;
    double thetas = 0.0;
    std::string ht_R = "unbounded";
    std::uint64_t seed = 0;
    std::optional<int> arc_segments;

    void attach(CLI::App* cmd) {
        cmd->add_option("--n", n, "coverage order (1, 2 or 3)");
        cmd->add_option("--r", r, "LoS range in meters or \"unbounded\"");
        cmd->add_option("--ds", ds, "minimum separation distance d_s (m)");
        cmd->add_option("--thetas", thetas, "minimum separation angle theta_s (degrees)");
        cmd->add_option("--ht-R", ht_R, "hyper-triangulation side bound (m) or \"unbounded\"");
        cmd->add_option("--seed", seed, "seed recorded in the deployment");
        cmd->add_option("--arc-segments", arc_segments, "disk discretization (overrides LOSPLAN_ARC_SEGMENTS)");
    }

    PlanConfig build() const {
        PlanConfig c;
        c.coverage_n = n;
        c.range_r = parse_length(r, "--r");
        c.msd_ds = ds;
        c.msa_thetas = thetas;
        c.ht_R = parse_length(ht_R, "--ht-R");
        c.seed = seed;
        c.arc_segments = arc_segments.value_or(default_arc_segments());
        return c;
    }
};

int run_partition(const std::string& layout_path, const std::string& ht_R, const std::string& out_json,
                  const std::string& out_svg) {
    const Layout layout = load_layout(layout_path);
    const double R = parse_length(ht_R, "--ht-R");
    const auto tris = hyper_triangulate(layout, R);
    const std::string text = triangles_to_json(tris, R).dump(2) + "\n";
    if (out_json.empty()) {
        std::cout << text;
    } else {
        write_file(out_json, text);
    }
    if (!out_svg.empty()) {
        RenderSpec spec;
        spec.triangles = true;
        spec.prns = false;
        write_file(out_svg, render_svg(Scene{&layout, tris, nullptr, {}, nullptr, {}}, spec));
    }
    std::cerr << "triangles: " << tris.size() << "\n";
    return kExitOk;
}

int run_plan(const std::string& layout_path, const ConfigFlags& flags, const std::string& out, const std::string& svg,
             const std::string& report_path, const std::string& dump_graph) {
    const Layout layout = load_layout(layout_path);
    const PlanConfig cfg = flags.build();
    const PlanResult res = plan(layout, cfg);
    const std::string text = serialize_deployment(res.deployment, &res.report);
    if (out.empty()) {
        std::cout << text;
    } else {
        write_file(out, text);
    }
    if (!svg.empty()) {
        std::vector<Region> areas = res.primary.areas;
        areas.insert(areas.end(), res.secondary.areas.begin(), res.secondary.areas.end());
        areas.insert(areas.end(), res.trinary.areas.begin(), res.trinary.areas.end());
        RenderSpec spec;
        spec.areas = true;
        Scene scene{&layout, res.triangles, nullptr, areas, &res.deployment, {}};
        write_file(svg, render_svg(scene, spec));
    }
    if (!report_path.empty()) write_file(report_path, report_to_json(res.report).dump(2) + "\n");
    if (!dump_graph.empty()) {
        json g = {{"primary", graph_to_json(res.g1)}, {"primary_cover", cover_to_json(res.primary)}};
        if (cfg.coverage_n >= 2) {
            g["secondary"] = graph_to_json(res.g2);
            g["secondary_cover"] = cover_to_json(res.secondary);
        }
        if (cfg.coverage_n == 3) {
            g["trinary"] = graph_to_json(res.g3);
            g["trinary_cover"] = cover_to_json(res.trinary);
        }
        write_file(dump_graph, g.dump(2) + "\n");
    }
    const PlanReport& r = res.report;
    std::cerr << "triangles: " << r.triangles << "\n"
              << "counts: g=" << r.g << " g2=" << r.g2 << " g3=" << r.g3 << " total=" << r.total()
              << " hidden_t=" << r.hidden.t << "\n"
              << "lower bound t <= g: " << (r.bound_1 ? "holds" : "VIOLATED") << "\n";
    if (cfg.coverage_n >= 2) std::cerr << "lower bound 2t <= g+g2: " << (r.bound_2 ? "holds" : "VIOLATED") << "\n";
    if (cfg.coverage_n == 3) std::cerr << "lower bound 3t <= g+g2+g3: " << (r.bound_3 ? "holds" : "VIOLATED") << "\n";
    if (r.provably_optimal) std::cerr << "provably optimal: PRN count meets the hidden-set bound\n";
    if (!r.unplaceable.empty()) {
        std::cerr << "warning: " << r.unplaceable.size() << " triangle(s) could not be served:";
        for (int id : r.unplaceable) std::cerr << " " << id;
        std::cerr << "\n";
    }
    return kExitOk;
}

struct VerifyFlags {
    std::optional<int> n;
    std::optional<std::string> r;
    std::optional<double> ds;
    std::optional<double> thetas;
    int samples = 100000;
    std::uint64_t seed = 0;
    int threads = 1;
    std::string policy = "best";
    std::string samples_csv, cdf_csv, summary;
};

int run_verify(const std::string& layout_path, const std::string& dep_path, const VerifyFlags& f) {
    if (f.samples < 1) throw Error(Error::Kind::Precondition, "--samples must be at least 1");
    const Layout layout = load_layout(layout_path);
    const Deployment dep = parse_deployment(read_file(dep_path));
    PlanConfig cfg = dep.config;
    if (f.n) cfg.coverage_n = *f.n;
    if (f.r) cfg.range_r = parse_length(*f.r, "--r");
    if (f.ds) cfg.msd_ds = *f.ds;
    if (f.thetas) cfg.msa_thetas = *f.thetas;
    cfg.check();
    VerifyOptions vo;
    vo.n_samples = f.samples;
    vo.seed = f.seed;
    vo.threads = f.threads;
    vo.policy = f.policy == "first" ? EvaPolicy::First : EvaPolicy::Best;
    const EvaReport rep = verify_coverage(layout, dep, cfg, vo);
    if (!f.samples_csv.empty()) {
        std::ostringstream os;
        write_samples_csv(os, rep);
        write_file(f.samples_csv, os.str());
    }
    if (!f.cdf_csv.empty()) {
        std::ostringstream os;
        write_cdf_csv(os, rep);
        write_file(f.cdf_csv, os.str());
    }
    int covered = 0;
    for (const EvaSample& s : rep.samples) covered += s.covered;
    json summary = {{"layout", layout.name},
                    {"coverage_n", cfg.coverage_n},
                    {"prns", dep.prns.size()},
                    {"samples", f.samples},
                    {"seed", f.seed},
                    {"covered", covered},
                    {"coverage_fraction", rep.coverage_fraction}};
    if (cfg.coverage_n == 3) {
        summary["eva_policy"] = f.policy;
        summary["fraction_within_30deg"] = rep.fraction_within(30.0);
    }
    const std::string text = summary.dump(2) + "\n";
    if (f.summary.empty()) {
        std::cout << text;
    } else {
        write_file(f.summary, text);
    }
    std::cerr << "coverage: " << covered << "/" << f.samples << " (" << rep.coverage_fraction << ")\n";
    return rep.coverage_fraction >= 1.0 ? kExitOk : kExitVerifyFailed;
}

struct RenderFlags {
    std::string deployment, out, ht_R = "unbounded", layers = "layout,prns";
    int width = 800;
};

int run_render(const std::string& layout_path, const RenderFlags& f) {
    const Layout layout = load_layout(layout_path);
    RenderSpec spec;
    spec.width_px = f.width;
    spec.layout = spec.triangles = spec.graph = spec.areas = spec.prns = spec.samples = false;
    std::stringstream ss(f.layers);
    for (std::string item; std::getline(ss, item, ',');) {
        if (item == "layout") spec.layout = true;
        else if (item == "triangles") spec.triangles = true;
        else if (item == "prns") spec.prns = true;
        else throw Error(Error::Kind::Parse, "unsupported render layer \"" + item + "\" (use layout, triangles, prns)");
    }
    std::vector<Triangle> tris;
    if (spec.triangles) tris = hyper_triangulate(layout, parse_length(f.ht_R, "--ht-R"));
    std::optional<Deployment> dep;
    if (!f.deployment.empty()) dep = parse_deployment(read_file(f.deployment));
    Scene scene{&layout, tris, nullptr, {}, dep ? &*dep : nullptr, {}};
    const std::string svg = render_svg(scene, spec);
    if (f.out.empty()) {
        std::cout << svg;
    } else {
        write_file(f.out, svg);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LoS-aware PRN placement planner"};
    app.require_subcommand(1);

    std::string layout_path, dep_path, ht_R = "unbounded", out, svg, report, dump_graph;

    auto* part = app.add_subcommand("partition", "hyper-triangulate a layout");
    part->add_option("layout", layout_path, "floor-plan JSON")->required();
    part->add_option("--ht-R", ht_R, "maximum triangle side (m) or \"unbounded\"");
    part->add_option("--out", out, "triangles JSON (stdout if omitted)");
    part->add_option("--svg", svg, "SVG rendering of the partition");

    ConfigFlags cfg;
    auto* pl = app.add_subcommand("plan", "plan PRN locations for n-LoS coverage");
    pl->add_option("layout", layout_path, "floor-plan JSON")->required();
    cfg.attach(pl);
    pl->add_option("--out", out, "deployment JSON (stdout if omitted)");
    pl->add_option("--svg", svg, "SVG of PRNs and clique areas");
    pl->add_option("--report", report, "plan report JSON");
    pl->add_option("--dump-graph", dump_graph, "LoS graphs and covers as JSON adjacency lists");

    VerifyFlags vf;
    auto* ver = app.add_subcommand("verify", "Monte Carlo check of a deployment");
    ver->add_option("layout", layout_path, "floor-plan JSON")->required();
    ver->add_option("deployment", dep_path, "deployment JSON")->required();
    ver->add_option("--n", vf.n, "coverage order (default: from the deployment)");
    ver->add_option("--r", vf.r, "LoS range override");
    ver->add_option("--ds", vf.ds, "d_s override (m)");
    ver->add_option("--thetas", vf.thetas, "theta_s override (degrees)");
    ver->add_option("--samples", vf.samples, "number of UE samples");
    ver->add_option("--seed", vf.seed, "sampling seed");
    ver->add_option("--threads", vf.threads, "worker threads (results do not depend on it)");
    ver->add_option("--eva-policy", vf.policy, "serving triplet for EVA")->check(CLI::IsMember({"best", "first"}));
    ver->add_option("--samples-csv", vf.samples_csv, "per-sample CSV");
    ver->add_option("--cdf-csv", vf.cdf_csv, "EVA deviation CDF CSV");
    ver->add_option("--summary", vf.summary, "summary JSON (stdout if omitted)");

    RenderFlags rf;
    auto* ren = app.add_subcommand("render", "render a layout (and optionally a deployment) to SVG");
    ren->add_option("layout", layout_path, "floor-plan JSON")->required();
    ren->add_option("--deployment", rf.deployment, "deployment JSON");
    ren->add_option("--layers", rf.layers, "comma list of layout, triangles, prns");
    ren->add_option("--ht-R", rf.ht_R, "partition bound for the triangles layer");
    ren->add_option("--width", rf.width, "image width in pixels");
    ren->add_option("--out", rf.out, "SVG path (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*part) return run_partition(layout_path, ht_R, out, svg);
        if (*pl) return run_plan(layout_path, cfg, out, svg, report, dump_graph);
        if (*ver) return run_verify(layout_path, dep_path, vf);
        if (*ren) return run_render(layout_path, rf);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
