#include "theta/bounds.hpp"
#include "theta/errors.hpp"
#include "theta/io.hpp"
#include "theta/theta_graph.hpp"
#include "theta/verify.hpp"
#include "theta/visibility.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace theta;

constexpr int kExitClean = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct Jitter {
    double amplitude = 0.0;
    std::uint64_t seed = 1;

    void add_to(CLI::App* cmd)
    {
        cmd->add_option("--jitter", amplitude, "Perturb every point uniformly by up to this amount")
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--jitter-seed", seed, "Seed for --jitter");
    }

    void apply(Instance& inst) const
    {
        if (amplitude > 0) {
            jitter_points(inst, amplitude, seed);
        }
    }
};

std::string fmt(const char* pattern, double value)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, value);
    return buf;
}

std::string pair_text(const std::optional<std::pair<PointId, PointId>>& p)
{
    return p ? "(" + std::to_string(p->first) + "," + std::to_string(p->second) + ")" : "-";
}

int run_validate(const std::string& path, const std::vector<int>& cone_counts)
{
    const InstanceFile file = load_instance_file(path, false);
    const Instance& inst = file.instance;
    bool clean = true;
    for (const std::string& problem : instance_problems(inst)) {
        std::cout << "instance: " << problem << "\n";
        clean = false;
    }
    for (const int m : cone_counts) {
        const ConeSystem cones(m);
        for (const auto& v : validate_general_position(inst.points, cones)) {
            std::cout << "m=" << m << ": " << to_string(v.kind) << " at points";
            for (const PointId p : v.points) {
                std::cout << " " << p;
            }
            std::cout << "\n";
            clean = false;
        }
    }
    std::cout << (clean ? "clean" : "not clean") << ": " << inst.size() << " points, " << inst.constraints.size()
              << " constraints\n";
    return clean ? kExitClean : kExitViolation;
}

int run_build(const std::string& path, int m, const std::string& out, const std::string& svg, const Jitter& jitter)
{
    const ConeSystem cones(m);
    Instance inst = load_instance(path);
    jitter.apply(inst);
    const ThetaGraph g = build_constrained_theta(inst, cones);
    const std::string text = format_graph(g, cones);
    if (out.empty()) {
        std::cout << text;
    } else {
        write_text(out, text);
        std::cout << "m=" << m << " vertices=" << g.size() << " edges=" << g.edges().size()
                  << " ray_ties=" << g.ray_ties().size() << "\n";
    }
    if (!svg.empty()) {
        render_svg(inst, g, nullptr, svg);
    }
    return kExitClean;
}

int run_ratio(const std::string& path, int m, bool per_pair, bool timing, const std::string& report_path,
              const std::string& svg, const Jitter& jitter)
{
    const ConeSystem cones(m);
    Instance inst = load_instance(path);
    jitter.apply(inst);
    const auto start = std::chrono::steady_clock::now();
    const ThetaGraph g = build_constrained_theta(inst, cones);
    const RatioReport report = pair_ratio_report(inst, cones, g);
    const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;

    std::cout << "m=" << report.m << " k=" << report.k << " x=" << report.x << "\n"
              << "bound      " << fmt("%.9f", report.bound) << "\n"
              << "max_ratio  " << fmt("%.9f", report.max_ratio) << " at " << pair_text(report.argmax) << "\n"
              << "max_vis    " << fmt("%.9f", report.max_vis_ratio) << "\n"
              << "violations " << report.violations.size() << " pair, " << report.vis_violations.size()
              << " vis, " << report.connectivity_mismatches.size() << " connectivity\n";
    if (timing) {
        std::cout << "elapsed_ms " << fmt("%.3f", elapsed.count()) << "\n";
    }
    if (per_pair && report_path.empty()) {
        for (const PairRecord& r : report.pairs) {
            std::cout << r.u << " " << r.w << " " << fmt("%.9f", r.ratio) << " " << fmt("%.9f", r.bound)
                      << (r.violation ? " VIOLATION" : "") << "\n";
        }
    }
    if (!report_path.empty()) {
        ReportFormat format{per_pair, std::nullopt};
        if (timing) {
            format.elapsed_ms = elapsed.count();
        }
        write_text(report_path, format_report(report, format));
    }
    if (!svg.empty()) {
        render_svg(inst, g, &report, svg);
    }
    return report.clean() ? kExitClean : kExitViolation;
}

int run_sweep(const std::string& path, const std::vector<int>& cone_counts, const Jitter& jitter)
{
    Instance inst = load_instance(path);
    jitter.apply(inst);
    bool clean = true;
    std::cout << "m   bound        max_ratio    argmax\n";
    for (const int m : cone_counts) {
        const ConeSystem cones(m);
        const RatioReport report = pair_ratio_report(inst, cones);
        clean = clean && report.clean();
        char row[128];
        std::snprintf(row, sizeof row, "%-3d %-12.9f %-12.9f ", m, report.bound, report.max_ratio);
        std::cout << row << pair_text(report.argmax) << (report.clean() ? "" : " VIOLATION") << "\n";
    }
    return clean ? kExitClean : kExitViolation;
}

int run_search(int m, std::uint64_t seed, std::size_t iters, const SearchOptions& options, const std::string& out)
{
    const FamilySpec spec = family_of(m);
    const SearchResult result = adversarial_search(spec, seed, iters, options);
    std::cout << "m=" << m << " achieved " << fmt("%.9f", result.achieved) << " bound " << fmt("%.9f", result.bound)
              << " evaluations " << result.evaluations << "\n";
    if (!out.empty()) {
        InstanceFile file{kInstanceFormatVersion, result.certificate.value_or(result.best), {}};
        file.metadata["cones"] = std::to_string(m);
        file.metadata["seed"] = std::to_string(seed);
        file.metadata["achieved"] = format_double(result.achieved);
        save_instance(file, out);
    }
    if (result.certificate) {
        std::cout << "bound exceeded: certificate instance " << (out.empty() ? "not saved" : "saved") << "\n";
        return kExitViolation;
    }
    return kExitClean;
}

int run_gen(const RandomInstanceOptions& options, std::uint64_t seed, const std::string& out)
{
    InstanceFile file{kInstanceFormatVersion, random_instance(seed, options), {}};
    file.metadata["seed"] = std::to_string(seed);
    save_instance(file, out);
    std::cout << file.instance.size() << " points, " << file.instance.constraints.size() << " constraints\n";
    return kExitClean;
}

int run_chain(const std::string& path, PointId u, PointId v, PointId w)
{
    const Instance inst = load_instance(path);
    for (const PointId id : {u, v, w}) {
        if (id >= inst.size()) {
            throw IndexOutOfRange("point " + std::to_string(id) + " out of range");
        }
    }
    const ConvexChain chain = convex_chain(inst, u, v, w);
    const bool ok = verify_chain(inst, chain);
    std::cout << "chain";
    for (const PointId p : chain.vertices) {
        std::cout << " " << p;
    }
    std::cout << "\n" << (ok ? "verified" : "verification failed") << "\n";
    return ok ? kExitClean : kExitViolation;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Constrained theta-graph construction and spanning-ratio checks"};
    app.require_subcommand(1);

    std::string instance_path, out, svg, report_path;
    int m = 0;
    std::vector<int> cone_counts{6, 7, 8, 9, 10, 11, 12, 13};
    bool per_pair = false, timing = false;
    Jitter jitter;
    std::uint64_t seed = 1;
    std::size_t iters = 1000;
    SearchOptions search;
    RandomInstanceOptions gen;
    PointId cu = 0, cv = 0, cw = 0;

    auto* validate = app.add_subcommand("validate", "General-position and planarity report");
    validate->add_option("instance", instance_path)->required();
    validate->add_option("--cones", cone_counts, "Cone counts to check")->delimiter(',');

    auto* build = app.add_subcommand("build", "Construct the constrained theta-graph");
    build->add_option("instance", instance_path)->required();
    build->add_option("--cones", m)->required();
    build->add_option("--out", out, "Graph JSON output (stdout if omitted)");
    build->add_option("--svg", svg);
    jitter.add_to(build);

    auto* ratio = app.add_subcommand("ratio", "Check every visible pair against its bound");
    ratio->add_option("instance", instance_path)->required();
    ratio->add_option("--cones", m)->required();
    ratio->add_flag("--per-pair", per_pair);
    ratio->add_flag("--timing", timing);
    ratio->add_option("--report", report_path);
    ratio->add_option("--svg", svg);
    jitter.add_to(ratio);

    auto* sweep = app.add_subcommand("sweep", "Ratio summary for several cone counts");
    sweep->add_option("instance", instance_path)->required();
    sweep->add_option("--cones", cone_counts)->delimiter(',')->required();
    jitter.add_to(sweep);

    auto* search_cmd = app.add_subcommand("search", "Adversarial hill-climbing search");
    search_cmd->add_option("--cones", m)->required();
    search_cmd->add_option("--seed", seed);
    search_cmd->add_option("--iters", iters)->check(CLI::PositiveNumber);
    search_cmd->add_option("--points", search.points);
    search_cmd->add_option("--constraints", search.max_constraints);
    search_cmd->add_option("--restarts", search.restarts)->check(CLI::PositiveNumber);
    search_cmd->add_option("--out", out);

    auto* gen_cmd = app.add_subcommand("gen", "Random valid instance");
    gen_cmd->add_option("--points", gen.points)->required();
    gen_cmd->add_option("--constraints", gen.constraints);
    gen_cmd->add_option("--seed", seed);
    gen_cmd->add_option("--out", out)->required();

    auto* chain = app.add_subcommand("chain", "Convex chain of a triangle u v w");
    chain->add_option("instance", instance_path)->required();
    chain->add_option("--u", cu)->required();
    chain->add_option("--v", cv)->required();
    chain->add_option("--w", cw)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*validate) {
            return run_validate(instance_path, cone_counts);
        }
        if (*build) {
            return run_build(instance_path, m, out, svg, jitter);
        }
        if (*ratio) {
            return run_ratio(instance_path, m, per_pair, timing, report_path, svg, jitter);
        }
        if (*sweep) {
            return run_sweep(instance_path, cone_counts, jitter);
        }
        if (*search_cmd) {
            return run_search(m, seed, iters, search, out);
        }
        if (*gen_cmd) {
            return run_gen(gen, seed, out);
        }
        if (*chain) {
            return run_chain(instance_path, cu, cv, cw);
        }
    } catch (const theta::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
