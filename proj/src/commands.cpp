#include "kcubic/commands.hpp"

#include "kcubic/audit.hpp"
#include "kcubic/curvature.hpp"
#include "kcubic/errors.hpp"
#include "kcubic/extrema.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <thread>

namespace kcubic::cli {

namespace {

using nlohmann::ordered_json;

SpecialCubic curve_from(const RunConfig& cfg) {
    const Scalar a = parse_blend(cfg.a);
    if (!cfg.apex.empty())
        return build_special_cubic({-1, 0}, parse_point(cfg.apex), {1, 0}, a);
    return build_special_cubic(parse_point(cfg.q0), parse_point(cfg.q1), parse_point(cfg.q2), a);
}

void require_samples(int samples, int minimum = 1) {
    if (samples < minimum)
        throw ParseError("--samples must be at least " + std::to_string(minimum));
}

Scalar sample_param(int i, int samples) {
    if (samples == 1)
        return 0;
    Scalar t(i, samples - 1);
    t.canonicalize();
    return t;
}

std::string fixed6(double v) {
    if (v == 0.0 || std::abs(v) < 5e-7)
        v = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::optional<double> kappa_at(const CurvatureModel& model, double t) {
    try {
        return signed_curvature(model, t);
    } catch (const ZeroSpeedError&) {
        return std::nullopt;
    }
}

ordered_json window_json(const RootWindow& w) {
    return ordered_json{{"lo", to_string(w.lo)}, {"hi", to_string(w.hi)}};
}

template <class F>
void parallel_indices(std::size_t n, int threads, F&& body) {
    const auto workers = static_cast<std::size_t>(std::max(1, threads));
    if (workers == 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers)
                body(i);
        });
}

std::vector<Scalar> linspace(const Scalar& lo, const Scalar& hi, int count) {
    if (count < 1)
        throw ParseError("grid point count must be positive");
    if (count == 1)
        return {lo};
    std::vector<Scalar> out;
    for (int i = 0; i < count; ++i) {
        Scalar s(i, count - 1);
        s.canonicalize();
        out.push_back(lo + (hi - lo) * s);
    }
    return out;
}

GridSpec grid_from(const RunConfig& cfg) {
    GridSpec g;
    g.a = linspace(parse_scalar(cfg.grid_a_min), parse_scalar(cfg.grid_a_max), cfg.grid_a_count);
    const Scalar b_max = parse_scalar(cfg.grid_b_max);
    const Scalar step = parse_scalar(cfg.grid_b_step);
    if (step <= 0)
        throw ParseError("--b-step must be positive");
    for (Scalar b = 0; b <= b_max; b += step)
        g.b.push_back(b);
    for (const auto& h2 : cfg.grid_h2)
        g.h2.push_back(parse_scalar(h2));
    return g;
}

} // namespace

Point2 parse_point(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos)
        throw ParseError("expected a point as x,y: '" + text + "'");
    return {parse_scalar(std::string_view(text).substr(0, comma)),
            parse_scalar(std::string_view(text).substr(comma + 1))};
}

Scalar parse_blend(const std::string& text) {
    Scalar a = parse_scalar(text);
    if (a <= 0 || a > 1)
        throw ParseError("blend parameter a must satisfy 0 < a <= 1, got " + text);
    return a;
}

std::string format_number(double v) {
    if (v == 0.0)
        v = 0.0;
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

int cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    require_samples(cfg.samples);
    const SpecialCubic c = curve_from(cfg);
    out << "t,x,y\n";
    for (int i = 0; i < cfg.samples; ++i) {
        const Scalar t = sample_param(i, cfg.samples);
        const Point2 p = c.bezier.point_at(t);
        out << format_number(to_double(t)) << ',' << format_number(to_double(p.x)) << ','
            << format_number(to_double(p.y)) << '\n';
    }
    return kOk;
}

int cmd_curvature(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    require_samples(cfg.samples);
    const SpecialCubic c = curve_from(cfg);
    const ExtremaKind kind = classify(c);
    if (kind != ExtremaKind::Regular)
        err << "note: kind=" << to_string(kind) << '\n';
    const CurvatureModel model = curvature_model(c);
    out << "t,kappa\n";
    for (int i = 0; i < cfg.samples; ++i) {
        const double t = to_double(sample_param(i, cfg.samples));
        out << format_number(t) << ',';
        if (auto k = kappa_at(model, t))
            out << format_number(*k);
        else
            err << "note: zero speed at t=" << format_number(t) << ", curvature undefined\n";
        out << '\n';
    }
    return kOk;
}

int cmd_extrema(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const SpecialCubic c = curve_from(cfg);
    const ExtremaReport report = count_extrema(c);
    ordered_json locs = ordered_json::array();
    for (const auto& loc : report.locations()) {
        ordered_json j{{"t", loc.t}};
        j["kappa"] = loc.kappa ? ordered_json(*loc.kappa) : ordered_json(nullptr);
        j["window"] = window_json(loc.window);
        locs.push_back(std::move(j));
    }
    ordered_json degenerate = ordered_json::array();
    for (const auto& w : report.degenerate_critical_points())
        degenerate.push_back(window_json(w));
    ordered_json doc{{"kind", std::string(to_string(report.kind()))},
                     {"count", report.count()},
                     {"locations", std::move(locs)},
                     {"theorem_regime", report.theorem_regime()},
                     {"degenerate_critical_points", std::move(degenerate)}};
    out << doc.dump(2) << '\n';
    return kOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.count < 1)
        throw ParseError("sweep needs at least one configuration (-n >= 1)");
    if (cfg.oracle_samples < 1000)
        throw ParseError("--oracle-samples must be at least 1000");
    const Scalar a_min = parse_scalar(cfg.a_min);
    const Scalar a_max = parse_scalar(cfg.a_max);
    if (a_min < 0 || a_max > 1 || a_min >= a_max)
        throw ParseError("a-range must satisfy 0 <= a-min < a-max <= 1");
    const bool regime = a_min >= Scalar(2, 3);
    const std::uint64_t seed = cfg.seed.value_or(7);

    struct Draw {
        Scalar b, h, a;
    };
    std::vector<Draw> draws;
    draws.reserve(static_cast<std::size_t>(cfg.count));
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> b_dist(0, 10000), h_dist(1, 10000), a_dist(1, 1000000);
    for (long i = 0; i < cfg.count; ++i) {
        Scalar b(b_dist(rng), 1000), h(h_dist(rng), 1000), s(a_dist(rng), 1000000);
        b.canonicalize();
        h.canonicalize();
        s.canonicalize();
        draws.push_back({b, h, a_min + (a_max - a_min) * s});
    }

    struct Outcome {
        int count = 0;
        int oracle = 0;
        bool violation = false;
        bool mismatch = false;
        bool exempted = false;
    };
    std::vector<Outcome> outcomes(draws.size());
    const auto start = std::chrono::steady_clock::now();
    parallel_indices(draws.size(), cfg.threads, [&](std::size_t i) {
        const Draw& d = draws[i];
        const SpecialCubic c = canonical_cubic(d.b, d.h, d.a);
        Outcome& o = outcomes[i];
        o.oracle = oracle_count(c, cfg.oracle_samples);
        try {
            const ExtremaReport report = count_extrema(c);
            o.count = report.count();
            o.mismatch = !oracle_agrees(report, o.oracle);
            o.exempted = !o.mismatch && o.oracle != o.count;
        } catch (const TheoremViolation&) {
            o.count = count_extrema(CanonicalConfig{d.b, d.h * d.h, d.a});
            o.violation = true;
            o.mismatch = o.oracle != o.count;
        }
    });
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::map<int, long> histogram;
    int max_count = 0;
    long mismatches = 0, exemptions = 0, violations = 0;
    ordered_json witnesses = ordered_json::array();
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const Outcome& o = outcomes[i];
        ++histogram[o.count];
        max_count = std::max(max_count, o.count);
        mismatches += o.mismatch;
        exemptions += o.exempted;
        violations += o.violation;
        if ((o.mismatch || o.violation || (regime && o.count > 1)) && witnesses.size() < 20)
            witnesses.push_back({{"index", i},
                                 {"b", to_string(draws[i].b)},
                                 {"h", to_string(draws[i].h)},
                                 {"a", to_string(draws[i].a)},
                                 {"count", o.count},
                                 {"oracle", o.oracle}});
    }
    ordered_json hist = ordered_json::object();
    for (const auto& [k, v] : histogram)
        hist[std::to_string(k)] = v;

    const bool failed = regime && (violations > 0 || mismatches > 0);
    ordered_json doc{{"status", regime ? (failed ? "fail" : "pass") : "exploratory"},
                     {"mode", regime ? "theorem" : "exploratory"},
                     {"n", cfg.count},
                     {"seed", seed},
                     {"a_range", {{"lo", to_string(a_min)}, {"hi", to_string(a_max)}}},
                     {"oracle_samples", cfg.oracle_samples},
                     {"max_count", max_count},
                     {"histogram", std::move(hist)},
                     {"mismatches", mismatches},
                     {"boundary_exemptions", exemptions},
                     {"violations", violations},
                     {"witnesses", std::move(witnesses)}};
    out << doc.dump(2) << '\n';
    err << "sweep: " << cfg.count << " configs in " << fixed6(seconds) << " s\n";
    return failed ? kViolation : kOk;
}

int cmd_audit(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const GridSpec grid = grid_from(cfg);
    try {
        grid.validate();
    } catch (const DomainError& e) {
        throw ParseError(std::string("invalid audit grid: ") + e.what());
    }
    AuditOptions opts;
    opts.seed = cfg.seed.value_or(42);
    opts.identity_samples = cfg.identity_samples;
    opts.threads = cfg.threads;
    const AuditReport report = run_full_audit(grid, opts);
    const std::string json = report.to_json().dump(2) + "\n";
    if (!cfg.json_output.empty()) {
        std::ofstream file(cfg.json_output, std::ios::binary);
        if (!(file << json) || !file.flush())
            throw std::ios_base::failure("cannot write " + cfg.json_output);
    }
    if (cfg.format == OutputFormat::Json)
        out << json;
    else
        out << report.to_text();
    return report.passed() ? kOk : kViolation;
}

int cmd_plot(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    require_samples(cfg.samples, 2);
    if (cfg.width < 200 || cfg.height < 120)
        throw ParseError("plot needs --width >= 200 and --height >= 120");
    const SpecialCubic c = curve_from(cfg);
    const ExtremaReport report = count_extrema(c);
    const CurvatureModel model = curvature_model(c);

    const int n = cfg.samples;
    std::vector<double> ts(n), xs(n), ys(n);
    std::vector<std::optional<double>> ks(n);
    for (int i = 0; i < n; ++i) {
        const Scalar t = sample_param(i, n);
        const Point2 p = c.bezier.point_at(t);
        ts[i] = to_double(t);
        xs[i] = to_double(p.x);
        ys[i] = to_double(p.y);
        ks[i] = kappa_at(model, ts[i]);
    }

    const double W = cfg.width, H = cfg.height;
    const double margin = 30, top = 40;
    const double panel_w = W / 2 - 2 * margin, panel_h = H - top - margin;

    // Curve panel: equal aspect, fitted to the control polygon.
    double x_lo = 1e300, x_hi = -1e300, y_lo = 1e300, y_hi = -1e300;
    for (const auto& p : c.bezier.p) {
        x_lo = std::min(x_lo, to_double(p.x));
        x_hi = std::max(x_hi, to_double(p.x));
        y_lo = std::min(y_lo, to_double(p.y));
        y_hi = std::max(y_hi, to_double(p.y));
    }
    const double span = std::max({x_hi - x_lo, y_hi - y_lo, 1e-12});
    const double scale = std::min(panel_w, panel_h) / span;
    const double cx0 = margin + (panel_w - (x_hi - x_lo) * scale) / 2;
    const double cy0 = top + panel_h - (panel_h - (y_hi - y_lo) * scale) / 2;
    auto px = [&](double x) { return cx0 + (x - x_lo) * scale; };
    auto py = [&](double y) { return cy0 - (y - y_lo) * scale; };

    // Curvature panel: clipped to the 2nd..98th percentile when a kink blows up.
    std::vector<double> finite;
    for (const auto& k : ks)
        if (k && std::isfinite(*k))
            finite.push_back(*k);
    std::sort(finite.begin(), finite.end());
    double k_lo = finite.empty() ? -1 : finite.front();
    double k_hi = finite.empty() ? 1 : finite.back();
    if (report.kind() != ExtremaKind::Regular && finite.size() > 50) {
        k_lo = finite[finite.size() / 50];
        k_hi = finite[finite.size() - 1 - finite.size() / 50];
    }
    k_lo = std::min(k_lo, 0.0);
    k_hi = std::max(k_hi, 0.0);
    if (k_hi - k_lo < 1e-12) {
        k_lo -= 1;
        k_hi += 1;
    }
    const double gx0 = W / 2 + margin;
    auto gx = [&](double t) { return gx0 + t * panel_w; };
    auto gy = [&](double k) {
        return top + panel_h - (std::clamp(k, k_lo, k_hi) - k_lo) / (k_hi - k_lo) * panel_h;
    };

    std::ostringstream s;
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << cfg.width
      << "\" height=\"" << cfg.height << "\" viewBox=\"0 0 " << cfg.width << ' ' << cfg.height
      << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << cfg.width << "\" height=\"" << cfg.height
      << "\" fill=\"white\"/>\n";

    s << "<g id=\"curve-panel\">\n<polyline id=\"control-polygon\" fill=\"none\" "
         "stroke=\"#999999\" stroke-dasharray=\"4 3\" points=\"";
    for (std::size_t i = 0; i < 4; ++i)
        s << (i ? " " : "") << fixed6(px(to_double(c.bezier.p[i].x))) << ','
          << fixed6(py(to_double(c.bezier.p[i].y)));
    s << "\"/>\n<polyline id=\"curve\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"2\" "
         "points=\"";
    for (int i = 0; i < n; ++i)
        s << (i ? " " : "") << fixed6(px(xs[i])) << ',' << fixed6(py(ys[i]));
    s << "\"/>\n";
    for (const auto& loc : report.locations()) {
        const Point2 p = c.bezier.point_at(from_double(loc.t));
        s << "<circle class=\"extremum\" cx=\"" << fixed6(px(to_double(p.x))) << "\" cy=\""
          << fixed6(py(to_double(p.y))) << "\" r=\"5\" fill=\"#c0392b\"/>\n";
    }
    s << "</g>\n";

    s << "<g id=\"curvature-panel\">\n<rect x=\"" << fixed6(gx0) << "\" y=\"" << fixed6(top)
      << "\" width=\"" << fixed6(panel_w) << "\" height=\"" << fixed6(panel_h)
      << "\" fill=\"none\" stroke=\"#333333\"/>\n"
      << "<line id=\"kappa-zero\" x1=\"" << fixed6(gx(0)) << "\" y1=\"" << fixed6(gy(0))
      << "\" x2=\"" << fixed6(gx(1)) << "\" y2=\"" << fixed6(gy(0))
      << "\" stroke=\"#bbbbbb\"/>\n";
    bool open = false;
    for (int i = 0; i < n; ++i) {
        if (!ks[i] || !std::isfinite(*ks[i])) {
            if (open)
                s << "\"/>\n";
            open = false;
            continue;
        }
        s << (open ? " " : "<polyline class=\"kappa\" fill=\"none\" stroke=\"#1f7a3a\" "
                           "stroke-width=\"2\" points=\"")
          << fixed6(gx(ts[i])) << ',' << fixed6(gy(*ks[i]));
        open = true;
    }
    if (open)
        s << "\"/>\n";
    for (const auto& loc : report.locations()) {
        s << "<line class=\"extremum\" x1=\"" << fixed6(gx(loc.t)) << "\" y1=\"" << fixed6(top)
          << "\" x2=\"" << fixed6(gx(loc.t)) << "\" y2=\"" << fixed6(top + panel_h)
          << "\" stroke=\"#c0392b\" stroke-dasharray=\"3 3\"/>\n";
        if (loc.kappa)
            s << "<circle class=\"extremum\" cx=\"" << fixed6(gx(loc.t)) << "\" cy=\""
              << fixed6(gy(*loc.kappa)) << "\" r=\"4\" fill=\"#c0392b\"/>\n";
    }
    s << "<text x=\"" << fixed6(gx0) << "\" y=\"" << fixed6(top + panel_h + 18)
      << "\" font-family=\"sans-serif\" font-size=\"12\">t = 0 .. 1, kappa in [" << fixed6(k_lo)
      << ", " << fixed6(k_hi) << "]</text>\n</g>\n";

    std::string legend;
    if (report.count() == 0) {
        legend = "monotone";
    } else {
        legend = std::string(to_string(report.kind())) + ": extremum at t=";
        for (std::size_t i = 0; i < report.locations().size(); ++i)
            legend += (i ? ", " : "") + fixed6(report.locations()[i].t);
    }
    s << "<text id=\"legend\" x=\"" << fixed6(margin) << "\" y=\"24\" font-family=\"sans-serif\" "
         "font-size=\"14\">"
      << legend << " (a=" << fixed6(to_double(c.a)) << ")</text>\n</svg>\n";
    out << s.str();
    return kOk;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::ostringstream buffer;
    int code = kOk;
    try {
        std::ostream& sink = cfg.output.empty() ? out : buffer;
        if (cfg.subcommand == "eval")
            code = cmd_eval(cfg, sink, err);
        else if (cfg.subcommand == "curvature")
            code = cmd_curvature(cfg, sink, err);
        else if (cfg.subcommand == "extrema")
            code = cmd_extrema(cfg, sink, err);
        else if (cfg.subcommand == "sweep")
            code = cmd_sweep(cfg, sink, err);
        else if (cfg.subcommand == "audit")
            code = cmd_audit(cfg, sink, err);
        else if (cfg.subcommand == "plot")
            code = cmd_plot(cfg, sink, err);
        else
            throw ParseError("unknown subcommand '" + cfg.subcommand + "'");
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const RegimeError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::ios_base::failure& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const TheoremViolation& e) {
        err << "violation: " << e.what() << '\n';
        return kViolation;
    }
    if (!cfg.output.empty()) {
        std::ofstream file(cfg.output, std::ios::binary);
        if (!file || !(file << buffer.str()) || !file.flush()) {
            err << "error: cannot write " << cfg.output << '\n';
            return kIoError;
        }
    }
    return code;
}

} // namespace kcubic::cli
