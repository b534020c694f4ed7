#include "kcubic/extrema.hpp"

#include "kcubic/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kcubic {

std::string_view to_string(ExtremaKind kind)
{
    switch (kind) {
    case ExtremaKind::Regular: return "Regular";
    case ExtremaKind::KinkAtHalf: return "KinkAtHalf";
    case ExtremaKind::ZeroCurvatureSegment: return "ZeroCurvatureSegment";
    case ExtremaKind::KinkedSegment: return "KinkedSegment";
    case ExtremaKind::DegeneratePoint: return "DegeneratePoint";
    }
    return "?";
}

ExtremaReport::ExtremaReport(ExtremaKind kind, std::vector<ExtremumLocation> locations,
                             std::vector<RootWindow> degenerate_critical_points, bool theorem_regime)
    : kind_(kind), locations_(std::move(locations)), degenerate_(std::move(degenerate_critical_points)),
      theorem_regime_(theorem_regime)
{
    if (theorem_regime_ && locations_.size() > 1) {
        std::ostringstream msg;
        msg << locations_.size() << " curvature extrema in the regime h > 0, 2/3 < a <= 1 at t =";
        for (const auto& loc : locations_)
            msg << ' ' << loc.t;
        throw TheoremViolation(msg.str());
    }
    switch (kind_) {
    case ExtremaKind::KinkAtHalf:
        if (locations_.size() != 1 || !locations_[0].window.exact() || locations_[0].window.lo != Scalar(1, 2))
            throw std::logic_error("KinkAtHalf report must hold exactly t = 1/2");
        break;
    case ExtremaKind::ZeroCurvatureSegment:
    case ExtremaKind::DegeneratePoint:
        if (!locations_.empty())
            throw std::logic_error("degenerate segment reports carry no extrema");
        break;
    default: break;
    }
}

ExtremaKind classify(const SpecialCubic& c)
{
    const auto canon = canonicalize(c.q0, c.q1, c.q2);
    if (std::holds_alternative<DegenerateCoincident>(canon))
        return c.q1 == c.q0 ? ExtremaKind::DegeneratePoint : ExtremaKind::KinkAtHalf;
    const auto& tri = std::get<CanonicalTriangle>(canon);
    if (tri.h > 0)
        return ExtremaKind::Regular;
    return tri.b < 1 ? ExtremaKind::ZeroCurvatureSegment : ExtremaKind::KinkedSegment;
}

namespace {

RootWindow pulled_back(const RootWindow& w, const CanonicalTriangle& tri)
{
    if (!tri.map.swapped)
        return w;
    RootWindow r = w;
    r.lo = 1 - w.hi;
    r.hi = 1 - w.lo;
    r.midpoint = to_double(Scalar((r.lo + r.hi) / 2));
    return r;
}

bool contains_root(const RationalPoly& p, const RootWindow& w)
{
    if (p.degree() < 1)
        return false;
    if (w.exact())
        return p(w.lo) == 0;
    if (p(w.lo) == 0 || p(w.hi) == 0)
        return true;
    return count_distinct_roots(sturm_sequence(squarefree_part(p)), w.lo, w.hi) > 0;
}

struct Split {
    std::vector<RootWindow> extrema;
    std::vector<RootWindow> degenerate;
};

// Roots of n_poly in (0,1) split into extrema and even-multiplicity points,
// with inflections removed.
Split extremum_windows(const CurvatureModel& model)
{
    Split out;
    if (model.n_poly.is_zero())
        return out;
    const RationalPoly shared = model.cross.is_zero() ? model.n_poly : gcd(model.n_poly, model.cross);
    for (auto& w : isolate_roots(model.n_poly, 0, 1, true)) {
        if (contains_root(shared, w))
            continue;
        (w.parity == Parity::Odd ? out.extrema : out.degenerate).push_back(std::move(w));
    }
    return out;
}

} // namespace

ExtremaReport count_extrema(const SpecialCubic& c, const ExtremaOptions& options)
{
    const auto canon = canonicalize(c.q0, c.q1, c.q2);
    if (std::holds_alternative<DegenerateCoincident>(canon)) {
        if (c.q1 == c.q0)
            return {ExtremaKind::DegeneratePoint, {}, {}, false};
        RootWindow half;
        half.lo = half.hi = Scalar(1, 2);
        half.midpoint = 0.5;
        return {ExtremaKind::KinkAtHalf, {{half, 0.5, std::nullopt}}, {}, false};
    }

    const auto& tri = std::get<CanonicalTriangle>(canon);
    const SpecialCubic canonical = canonical_cubic(tri.b, tri.h, c.a);

    if (tri.h == 0) {
        if (tri.b < 1)
            return {ExtremaKind::ZeroCurvatureSegment, {}, {}, false};
        // x' > 0 at t = 0 and x'(1) = 3a(1 - b) <= 0: one root in (0,1].
        const RationalPoly dx = derivatives(canonical).dx;
        std::vector<ExtremumLocation> kinks;
        for (auto& w : isolate_roots(dx, 0, 1, false)) {
            if (w.hi <= 0)
                continue;
            if (options.refine)
                w = refine(w, dx, options.refine_width);
            RootWindow back = pulled_back(w, tri);
            kinks.push_back({back, back.midpoint, std::nullopt});
        }
        return {ExtremaKind::KinkedSegment, std::move(kinks), {}, false};
    }

    const CurvatureModel canon_model = curvature_model(canonical);
    const CurvatureModel input_model = curvature_model(c);
    Split split = extremum_windows(canon_model);

    std::vector<ExtremumLocation> locations;
    for (auto& w : split.extrema) {
        if (options.refine)
            w = refine(w, canon_model.n_poly, options.refine_width);
        RootWindow back = pulled_back(w, tri);
        const double kappa = signed_curvature(input_model, back.midpoint);
        locations.push_back({back, back.midpoint, kappa});
    }
    std::vector<RootWindow> degenerate;
    for (const auto& w : split.degenerate)
        degenerate.push_back(pulled_back(w, tri));

    std::sort(locations.begin(), locations.end(), [](const auto& x, const auto& y) { return x.t < y.t; });
    std::sort(degenerate.begin(), degenerate.end(), [](const auto& x, const auto& y) { return x.lo < y.lo; });
    const bool regime = tri.with_blend(c.a).theorem_regime();
    return {ExtremaKind::Regular, std::move(locations), std::move(degenerate), regime};
}

int count_extrema(const CanonicalConfig& cfg)
{
    if (cfg.h2 <= 0)
        throw RegimeError("count_extrema on a canonical config needs h^2 > 0");
    if (cfg.a <= 0 || cfg.a > 1)
        throw RegimeError("blend parameter a must lie in (0,1]");
    return static_cast<int>(extremum_windows(canonical_curvature_model(cfg)).extrema.size());
}

int oracle_count(const SpecialCubic& c, int samples)
{
    if (samples < 1000)
        throw DomainError("oracle_count needs at least 1000 samples");
    switch (classify(c)) {
    case ExtremaKind::Regular: break;
    case ExtremaKind::KinkAtHalf:
    case ExtremaKind::KinkedSegment: throw ZeroSpeedError("curve has a kink; curvature is unbounded");
    default: throw DomainError("curvature of a degenerate segment has no extrema to sample");
    }

    const CurvatureSampler kappa(curvature_model(c));
    const double eps = kOracleBoundary;
    const double step = (1.0 - 2.0 * eps) / (samples - 1);
    int changes = 0, last_sign = 0;
    double prev = kappa(eps);
    for (int i = 1; i < samples; ++i) {
        const double t = i == samples - 1 ? 1.0 - eps : eps + step * i;
        const double cur = kappa(t);
        if (std::isnan(cur) || std::isnan(prev))
            throw ZeroSpeedError("zero speed while sampling");
        const double diff = cur - prev;
        const int s = (diff > 0) - (diff < 0);
        prev = cur;
        if (s == 0)
            continue;
        if (last_sign != 0 && s != last_sign)
            ++changes;
        last_sign = s;
    }
    return changes;
}

bool oracle_agrees(const ExtremaReport& report, int oracle, double eps)
{
    int interior = 0;
    for (const auto& loc : report.locations())
        if (to_double(loc.window.lo) >= eps && to_double(loc.window.hi) <= 1.0 - eps)
            ++interior;
    return oracle >= interior && oracle <= report.count();
}

std::optional<double> extremum_location(const SpecialCubic& c)
{
    const auto canon = canonicalize(c.q0, c.q1, c.q2);
    if (std::holds_alternative<DegenerateCoincident>(canon)
        || !std::get<CanonicalTriangle>(canon).with_blend(c.a).theorem_regime())
        throw RegimeError("extremum_location requires h > 0 and 2/3 < a <= 1");
    const ExtremaReport report = count_extrema(c);
    if (report.count() == 0)
        return std::nullopt;
    return report.locations().front().t;
}

} // namespace kcubic
