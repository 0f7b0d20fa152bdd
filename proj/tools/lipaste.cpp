// lipaste: command-line front end for LP constants, glued metrics, cover
// bounds and refinement sweeps on finite metric spaces.
//
// Reports go to stdout (or --out) as JSON, sweeps as CSV; one-line human
// summaries go to stderr. Exit codes: 0 success, 1 mathematical violation or
// false verdict, 2 input or usage error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "lipaste/lipaste.hpp"

namespace {

using lipaste::io::json;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;

struct RunConfig {
    std::string subcommand;
    std::vector<std::string> inputs;
    std::string out;
    double tol = lipaste::kDefaultMetricTol;
    std::uint64_t seed = 0;
    std::string format;

    // sample / sweep parameters
    std::string family;
    std::size_t n = 0;
    double t_min = 0.0;
    double angle = std::numbers::pi / 2;
    std::vector<std::size_t> chart{1, 1, 0};
    std::string metric = "default";
    std::size_t k_neighbors = 4;
    std::vector<double> h_values;
    double h_start = 0.0;
    std::size_t halvings = 0;

    // local
    std::optional<double> radius;
};

void emit(const RunConfig& cfg, const std::string& text)
{
    if (cfg.out.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out)
        throw lipaste::InputError("cannot write " + cfg.out);
    out << text;
}

void emit_json(const RunConfig& cfg, const json& doc)
{
    emit(cfg, doc.dump(2) + "\n");
}

lipaste::FiniteMetricSpace load_space(const std::string& path)
{
    return lipaste::io::space_from_json(lipaste::io::read_json_file(path));
}

int cmd_check_metric(const RunConfig& cfg)
{
    const auto space = load_space(cfg.inputs.at(0));
    const auto violations = lipaste::verify_metric(space, cfg.tol);
    emit_json(cfg, lipaste::io::violations_to_json(violations));
    if (violations.empty()) {
        std::cerr << "metric ok: " << space.size() << " points\n";
        return kExitOk;
    }
    std::cerr << violations.size() << " metric violation(s); first: " << lipaste::to_string(violations[0].kind)
              << "\n";
    return kExitViolation;
}

int cmd_lp(const RunConfig& cfg)
{
    const auto space = load_space(cfg.inputs.at(0));
    const auto pair = lipaste::io::pair_from_json(lipaste::io::read_json_file(cfg.inputs.at(1)), space.size());
    const auto report = lipaste::lp_constant(space, pair);
    emit_json(cfg, lipaste::io::to_json(report));
    if (report.disjoint)
        std::cerr << "disjoint pair, separation " << lipaste::io::format_real(*report.separation) << "\n";
    else
        std::cerr << "k = " << lipaste::io::format_real(*report.k) << "\n";
    return kExitOk;
}

int cmd_glue(const RunConfig& cfg)
{
    const auto space = load_space(cfg.inputs.at(0));
    const auto pair = lipaste::io::pair_from_json(lipaste::io::read_json_file(cfg.inputs.at(1)), space.size());
    const auto glued = lipaste::glued_metric(space, pair, cfg.tol);
    emit_json(cfg, lipaste::io::to_json(glued));
    std::cerr << "glued metric on " << glued.glued.size() << " points\n";
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg)
{
    const auto space = load_space(cfg.inputs.at(0));
    const auto pair = lipaste::io::pair_from_json(lipaste::io::read_json_file(cfg.inputs.at(1)), space.size());
    const fs::path fpath = cfg.inputs.at(2);
    const auto f = lipaste::io::function_from_json(lipaste::io::read_json_file(fpath), fpath.parent_path(), &space);

    if (pair.disjoint()) {
        const auto r = lipaste::separated_bound_check(f, pair, cfg.tol);
        json doc = lipaste::io::to_json(r);
        doc["mode"] = "separated";
        emit_json(cfg, doc);
        std::cerr << "Lip(f) = " << lipaste::io::format_real(r.lip) << ", separated bound "
                  << lipaste::io::format_real(r.bound) << (r.verdict ? " holds\n" : " FAILS\n");
        return r.verdict ? kExitOk : kExitViolation;
    }
    const auto lp = lipaste::lp_constant(space, pair);
    const auto r = lipaste::pasting_bound_check(f, pair, lp, cfg.tol);
    json doc = lipaste::io::to_json(r);
    doc["mode"] = "pasting";
    emit_json(cfg, doc);
    std::cerr << "Lip(f) = " << lipaste::io::format_real(r.lip) << ", bound max(L0*k, L0) = "
              << lipaste::io::format_real(r.bound) << (r.verdict ? " holds" : " FAILS") << (r.tight ? " (tight)" : "")
              << "\n";
    return r.verdict ? kExitOk : kExitViolation;
}

int cmd_local(const RunConfig& cfg)
{
    const auto space = load_space(cfg.inputs.at(0));
    const auto pair = lipaste::io::pair_from_json(lipaste::io::read_json_file(cfg.inputs.at(1)), space.size());
    lipaste::Cover cover;
    if (cfg.inputs.size() >= 3) {
        if (cfg.radius)
            throw lipaste::InputError("give either a cover file or --radius, not both");
        cover = lipaste::io::cover_from_json(lipaste::io::read_json_file(cfg.inputs[2]), space.size());
    } else if (cfg.radius) {
        cover = lipaste::ball_cover(space, pair, *cfg.radius);
    } else {
        throw lipaste::InputError("local needs a cover file or --radius");
    }
    const auto r = lipaste::global_bound_from_cover(space, pair, cover, cfg.tol);
    json doc = lipaste::io::to_json(r);
    doc["regions"] = cover.regions();
    emit_json(cfg, doc);
    std::cerr << "direct k = " << lipaste::io::format_real(r.direct_k) << ", cover bound "
              << lipaste::io::format_real(r.global_bound) << (r.bound_holds ? " holds\n" : " FAILS\n");
    return r.bound_holds ? kExitOk : kExitViolation;
}

lipaste::LinearChart chart_from(const RunConfig& cfg)
{
    if (cfg.chart.size() != 3)
        throw lipaste::InputError("--chart takes three values du,dv,dw");
    lipaste::LinearChart chart{cfg.chart[0], cfg.chart[1], cfg.chart[2]};
    chart.validate();
    return chart;
}

lipaste::MetricChoice metric_from(const RunConfig& cfg, lipaste::MetricChoice fallback)
{
    if (cfg.metric == "default")
        return fallback;
    if (cfg.metric == "euclidean")
        return {lipaste::MetricMode::euclidean, 0};
    if (cfg.metric == "sphere")
        return {lipaste::MetricMode::sphere_intrinsic, 0};
    if (cfg.metric == "graph")
        return {lipaste::MetricMode::graph_geodesic, cfg.k_neighbors};
    throw lipaste::InputError("unknown --metric '" + cfg.metric + "' (euclidean, sphere, graph)");
}

int cmd_sample(const RunConfig& cfg)
{
    json doc;
    doc["family"] = cfg.family;
    if (cfg.family == "random") {
        const auto space = lipaste::random_metric(cfg.n == 0 ? 8 : cfg.n, cfg.seed);
        doc["seed"] = cfg.seed;
        doc["space"] = lipaste::io::space_to_json(space);
        emit_json(cfg, doc);
        std::cerr << "random metric on " << space.size() << " points (seed " << cfg.seed << ")\n";
        return kExitOk;
    }

    lipaste::EmbeddedSample sample;
    if (cfg.family == "tangential_parabola")
        sample = lipaste::tangential_parabola_sample(cfg.n == 0 ? 9 : cfg.n, cfg.t_min == 0.0 ? 0.125 : cfg.t_min);
    else if (cfg.family == "transverse_lines")
        sample = lipaste::transverse_lines_sample(cfg.n == 0 ? 9 : cfg.n);
    else if (cfg.family == "great_circles")
        sample = lipaste::great_circles_sample(cfg.n == 0 ? 16 : cfg.n, cfg.angle);
    else if (cfg.family == "linear")
        sample = lipaste::linear_transverse_sample(chart_from(cfg), cfg.n == 0 ? 5 : cfg.n);
    else
        throw lipaste::InputError("unknown family '" + cfg.family
                                  + "' (tangential_parabola, transverse_lines, great_circles, linear, random)");
    sample.metric = metric_from(cfg, sample.metric);

    const auto sp = lipaste::realize(sample);
    doc["metric"] = lipaste::to_string(sample.metric.mode);
    doc["cloud"] = lipaste::io::point_cloud_to_json(sample);
    doc["space"] = lipaste::io::space_to_json(sp.space);
    doc["pair"] = lipaste::io::pair_to_json(sp.pair);
    emit_json(cfg, doc);
    std::cerr << cfg.family << ": " << sp.space.size() << " points, |A n B| = " << sp.pair.intersection().size()
              << "\n";
    return kExitOk;
}

int cmd_sweep(const RunConfig& cfg)
{
    lipaste::SweepFamily family;
    if (cfg.family == "tangential_parabola")
        family.kind = lipaste::FamilyKind::tangential_parabola;
    else if (cfg.family == "transverse_lines")
        family.kind = lipaste::FamilyKind::transverse_lines;
    else if (cfg.family == "great_circles")
        family.kind = lipaste::FamilyKind::great_circles;
    else if (cfg.family == "linear")
        family.kind = lipaste::FamilyKind::linear;
    else
        throw lipaste::InputError("unknown sweep family '" + cfg.family
                                  + "' (tangential_parabola, transverse_lines, great_circles, linear)");
    family.angle = cfg.angle;
    if (family.kind == lipaste::FamilyKind::linear)
        family.chart = chart_from(cfg);

    std::vector<double> hs = cfg.h_values;
    if (cfg.h_start > 0.0) {
        if (!hs.empty())
            throw lipaste::InputError("give either --h-list or --h-start/--halvings, not both");
        double h = cfg.h_start;
        for (std::size_t i = 0; i <= cfg.halvings; ++i, h /= 2)
            hs.push_back(h);
    }
    if (hs.empty())
        throw lipaste::InputError("sweep needs --h-list or --h-start");

    const auto records = lipaste::density_sweep(family, hs);
    if (cfg.format == "json")
        emit_json(cfg, lipaste::io::to_json(records));
    else
        emit(cfg, lipaste::io::sweep_csv(records));
    std::cerr << cfg.family << ": " << records.size() << " records, final k = "
              << lipaste::io::format_real(records.back().k) << "\n";
    return kExitOk;
}

int run(const RunConfig& cfg)
{
    if (cfg.format == "csv" && cfg.subcommand != "sweep")
        throw lipaste::InputError("--format csv is only available for sweep");
    if (cfg.subcommand == "check-metric")
        return cmd_check_metric(cfg);
    if (cfg.subcommand == "lp")
        return cmd_lp(cfg);
    if (cfg.subcommand == "glue")
        return cmd_glue(cfg);
    if (cfg.subcommand == "verify")
        return cmd_verify(cfg);
    if (cfg.subcommand == "local")
        return cmd_local(cfg);
    if (cfg.subcommand == "sample")
        return cmd_sample(cfg);
    if (cfg.subcommand == "sweep")
        return cmd_sweep(cfg);
    throw lipaste::InputError("no subcommand given");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"LP constants, glued metrics and transversality sweeps on finite metric spaces"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    app.add_option("--tol", cfg.tol, "relative tolerance for metric and bound comparisons")
        ->default_val(lipaste::kDefaultMetricTol)
        ->check(CLI::NonNegativeNumber);
    app.add_option("--seed", cfg.seed, "random seed")->default_val(0);
    app.add_option("--out", cfg.out, "write the report here instead of stdout");
    app.add_option("--format", cfg.format, "json, or csv (sweep only; its default)")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* check = app.add_subcommand("check-metric", "verify the metric axioms of a space");
    check->add_option("space", cfg.inputs, "space JSON")->required()->expected(1);

    auto* lp = app.add_subcommand("lp", "LP constant of a pair of subsets");
    lp->add_option("files", cfg.inputs, "space JSON, pair JSON")->required()->expected(2);

    auto* glue = app.add_subcommand("glue", "glued metric on A u B");
    glue->add_option("files", cfg.inputs, "space JSON, pair JSON")->required()->expected(2);

    auto* verify = app.add_subcommand("verify", "check Lip(f) against the pasting bound");
    verify->add_option("files", cfg.inputs, "space JSON, pair JSON, function JSON")->required()->expected(3);

    auto* local = app.add_subcommand("local", "LP bound assembled from a cover of A n B");
    local->add_option("files", cfg.inputs, "space JSON, pair JSON, [cover JSON]")->required()->expected(2, 3);
    local->add_option("--radius", cfg.radius, "use a ball cover of this radius instead of a cover file");

    auto add_family_options = [&cfg](CLI::App* sub) {
        sub->add_option("family", cfg.family, "sample family")->required();
        sub->add_option("--angle", cfg.angle, "great circle angle in radians");
        sub->add_option("--chart", cfg.chart, "linear chart split du,dv,dw")->delimiter(',')->expected(3);
    };

    auto* sample = app.add_subcommand("sample", "sample a family: point cloud, space and pair JSON");
    add_family_options(sample);
    sample->add_option("--n", cfg.n, "points per curve/line/circle, grid size, or point count (random)");
    sample->add_option("--t-min", cfg.t_min, "smallest nonzero parameter (tangential_parabola)");
    sample->add_option("--metric", cfg.metric, "euclidean, sphere or graph");
    sample->add_option("--k-neighbors", cfg.k_neighbors, "neighbours per point for --metric graph");

    auto* sweep = app.add_subcommand("sweep", "LP constant under refinement, as CSV");
    add_family_options(sweep);
    sweep->add_option("--h-list", cfg.h_values, "refinement parameters, strictly decreasing")->delimiter(',');
    sweep->add_option("--h-start", cfg.h_start, "first h, halved --halvings times");
    sweep->add_option("--halvings", cfg.halvings, "number of halvings after --h-start");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }
    for (auto* sub : app.get_subcommands())
        cfg.subcommand = sub->get_name();

    try {
        return run(cfg);
    } catch (const lipaste::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const lipaste::MetricError& e) {
        std::cerr << "metric violation: " << e.what() << "\n";
        return kExitViolation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
}
