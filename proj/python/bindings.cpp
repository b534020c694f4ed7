#include "kcubic/audit.hpp"
#include "kcubic/curvature.hpp"
#include "kcubic/errors.hpp"
#include "kcubic/extrema.hpp"
#include "kcubic/geometry.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace py = pybind11;
using namespace kcubic;

namespace {

// Rationals cross the boundary as decimal or "p/q" strings.
using PointText = std::pair<std::string, std::string>;

Point2 point(const PointText& p) {
    return {parse_scalar(p.first), parse_scalar(p.second)};
}

SpecialCubic cubic(const PointText& q0, const PointText& q1, const PointText& q2,
                   const std::string& a) {
    return build_special_cubic(point(q0), point(q1), point(q2), parse_scalar(a));
}

py::dict window_dict(const RootWindow& w) {
    py::dict d;
    d["lo"] = to_string(w.lo);
    d["hi"] = to_string(w.hi);
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact curvature analysis of blended quadratic-to-cubic Bezier curves";

    m.def(
        "control_points",
        [](const PointText& q0, const PointText& q1, const PointText& q2, const std::string& a) {
            std::vector<PointText> out;
            for (const auto& p : cubic(q0, q1, q2, a).bezier.p)
                out.emplace_back(to_string(p.x), to_string(p.y));
            return out;
        },
        py::arg("q0"), py::arg("q1"), py::arg("q2"), py::arg("a"));

    m.def(
        "point_at",
        [](const PointText& q0, const PointText& q1, const PointText& q2, const std::string& a,
           const std::string& t) {
            const Point2 p = cubic(q0, q1, q2, a).bezier.point_at(parse_scalar(t));
            return PointText{to_string(p.x), to_string(p.y)};
        },
        py::arg("q0"), py::arg("q1"), py::arg("q2"), py::arg("a"), py::arg("t"));

    m.def(
        "canonicalize",
        [](const PointText& q0, const PointText& q1, const PointText& q2) -> std::optional<py::dict> {
            const auto r = canonicalize(point(q0), point(q1), point(q2));
            if (!std::holds_alternative<CanonicalTriangle>(r))
                return std::nullopt;
            const auto& tri = std::get<CanonicalTriangle>(r);
            py::dict d;
            d["b"] = to_string(tri.b);
            d["h"] = to_string(tri.h);
            d["mirrored"] = tri.map.mirrored;
            d["swapped"] = tri.map.swapped;
            return d;
        },
        py::arg("q0"), py::arg("q1"), py::arg("q2"));

    m.def(
        "signed_curvature",
        [](const PointText& q0, const PointText& q1, const PointText& q2, const std::string& a,
           double t) { return signed_curvature(cubic(q0, q1, q2, a), t); },
        py::arg("q0"), py::arg("q1"), py::arg("q2"), py::arg("a"), py::arg("t"));

    m.def(
        "extremum_condition_poly",
        [](const PointText& q0, const PointText& q1, const PointText& q2, const std::string& a) {
            const RationalPoly p = extremum_condition_poly(cubic(q0, q1, q2, a));
            std::vector<std::string> coeffs;
            for (int k = 0; k <= p.degree(); ++k)
                coeffs.push_back(to_string(p.coefficient(k)));
            return coeffs;
        },
        py::arg("q0"), py::arg("q1"), py::arg("q2"), py::arg("a"));

    m.def(
        "count_extrema",
        [](const PointText& q0, const PointText& q1, const PointText& q2, const std::string& a) {
            const ExtremaReport r = count_extrema(cubic(q0, q1, q2, a));
            py::list locs;
            for (const auto& loc : r.locations()) {
                py::dict d;
                d["t"] = loc.t;
                d["kappa"] = loc.kappa ? py::object(py::float_(*loc.kappa)) : py::object(py::none());
                d["window"] = window_dict(loc.window);
                locs.append(d);
            }
            py::list degenerate;
            for (const auto& w : r.degenerate_critical_points())
                degenerate.append(window_dict(w));
            py::dict d;
            d["kind"] = std::string(to_string(r.kind()));
            d["count"] = r.count();
            d["locations"] = locs;
            d["theorem_regime"] = r.theorem_regime();
            d["degenerate_critical_points"] = degenerate;
            return d;
        },
        py::arg("q0"), py::arg("q1"), py::arg("q2"), py::arg("a"));

    m.def(
        "oracle_count",
        [](const PointText& q0, const PointText& q1, const PointText& q2, const std::string& a,
           int samples) { return oracle_count(cubic(q0, q1, q2, a), samples); },
        py::arg("q0"), py::arg("q1"), py::arg("q2"), py::arg("a"), py::arg("samples"));

    m.def(
        "run_full_audit",
        [](std::uint64_t seed, int identity_samples, int threads) {
            AuditOptions opts;
            opts.seed = seed;
            opts.identity_samples = identity_samples;
            opts.threads = threads;
            AuditReport report;
            {
                py::gil_scoped_release release;
                report = run_full_audit(GridSpec::defaults(), opts);
            }
            return report.to_json().dump();
        },
        py::arg("seed") = 42, py::arg("identity_samples") = 128, py::arg("threads") = 1);

    py::register_exception<TheoremViolation>(m, "TheoremViolation", PyExc_RuntimeError);
}
