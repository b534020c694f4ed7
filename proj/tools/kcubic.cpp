#include "kcubic/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

void curve_options(CLI::App* app, kcubic::cli::RunConfig& cfg) {
    app->add_option("--q0", cfg.q0, "first control point x,y")->capture_default_str();
    app->add_option("--q1", cfg.q1, "apex control point x,y")->capture_default_str();
    app->add_option("--q2", cfg.q2, "last control point x,y")->capture_default_str();
    app->add_option("-a,--blend", cfg.a, "blend parameter in (0, 1]")->capture_default_str();
    app->add_option("--apex", cfg.apex, "b,h: canonical triangle (-1,0), (b,h), (1,0)");
}

void output_option(CLI::App* app, kcubic::cli::RunConfig& cfg) {
    app->add_option("-o,--output", cfg.output, "output file (default: standard output)");
}

void seed_option(CLI::App* app, kcubic::cli::RunConfig& cfg) {
    app->add_option_function<std::uint64_t>(
        "--seed", [&cfg](const std::uint64_t& s) { cfg.seed = s; },
        "random seed (sweep default 7, audit default 42)");
}

} // namespace

int main(int argc, char** argv) {
    kcubic::cli::RunConfig cfg;
    CLI::App app{"Curvature extrema of blended quadratic-to-cubic Bezier curves"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "kcubic 0.1.0");

    auto* eval = app.add_subcommand("eval", "sample the curve as CSV t,x,y");
    auto* curvature = app.add_subcommand("curvature", "sample the signed curvature as CSV t,kappa");
    auto* extrema = app.add_subcommand("extrema", "exact curvature extrema as JSON");
    auto* plot = app.add_subcommand("plot", "SVG with the curve and its curvature graph");
    for (auto* sub : {eval, curvature, extrema, plot}) {
        curve_options(sub, cfg);
        output_option(sub, cfg);
    }
    for (auto* sub : {eval, curvature})
        sub->add_option("--samples", cfg.samples, "number of uniform samples in [0, 1]")
            ->capture_default_str();
    // Same flag, different default: finer sampling for the plot.
    plot->add_option("--samples", cfg.samples, "number of uniform samples in [0, 1] (default 201)");
    plot->add_option("--width", cfg.width, "SVG width in px")->capture_default_str();
    plot->add_option("--height", cfg.height, "SVG height in px")->capture_default_str();
    static std::string fixed_format;
    eval->add_option("--format", fixed_format, "output format")->check(CLI::IsMember({"csv"}));
    curvature->add_option("--format", fixed_format, "output format")->check(CLI::IsMember({"csv"}));
    extrema->add_option("--format", fixed_format, "output format")->check(CLI::IsMember({"json"}));
    plot->add_option("--format", fixed_format, "output format")->check(CLI::IsMember({"svg"}));

    auto* sweep = app.add_subcommand("sweep", "random property sweep against a sampling oracle");
    sweep->add_option("-n,--count", cfg.count, "number of random configurations")
        ->capture_default_str();
    sweep->add_option("--a-min", cfg.a_min, "exclusive lower end of the a range")
        ->capture_default_str();
    sweep->add_option("--a-max", cfg.a_max, "inclusive upper end of the a range")
        ->capture_default_str();
    sweep->add_option("--oracle-samples", cfg.oracle_samples, "oracle grid size")
        ->capture_default_str();
    seed_option(sweep, cfg);
    output_option(sweep, cfg);
    sweep->add_option("--threads", cfg.threads, "worker threads")->capture_default_str();

    auto* audit = app.add_subcommand("audit", "mechanical audit of the proof lemmas");
    seed_option(audit, cfg);
    output_option(audit, cfg);
    audit->add_option("--threads", cfg.threads, "worker threads")->capture_default_str();
    audit->add_option("--json", cfg.json_output, "also write the JSON report to this path");
    std::string audit_format = "text";
    audit->add_option("--format", audit_format, "stdout format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    audit->add_option("--identity-samples", cfg.identity_samples,
                      "random rational points for the identity checks")
        ->capture_default_str();
    audit->add_option("--grid-a-min", cfg.grid_a_min, "smallest grid a, must exceed 2/3")
        ->capture_default_str();
    audit->add_option("--grid-a-max", cfg.grid_a_max, "largest grid a")->capture_default_str();
    audit->add_option("--grid-a-count", cfg.grid_a_count, "evenly spaced a values")
        ->capture_default_str();
    audit->add_option("--grid-b-max", cfg.grid_b_max, "grid b runs from 0 to this value")
        ->capture_default_str();
    audit->add_option("--grid-b-step", cfg.grid_b_step, "grid b spacing")->capture_default_str();
    audit->add_option("--grid-h2", cfg.grid_h2, "comma-separated h^2 values (default 0.01,0.1,1,4,25,100)")
        ->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kcubic::cli::kOk : kcubic::cli::kUsage;
    }
    if (audit_format == "json")
        cfg.format = kcubic::cli::OutputFormat::Json;
    if (plot->parsed() && plot->count("--samples") == 0)
        cfg.samples = 201;
    for (auto* sub : app.get_subcommands())
        cfg.subcommand = sub->get_name();
    return kcubic::cli::run(cfg, std::cout, std::cerr);
}
