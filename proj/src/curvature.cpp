#include "kcubic/curvature.hpp"

#include "kcubic/errors.hpp"

#include <cmath>
#include <limits>

namespace kcubic {

RationalPoly bernstein_cubic(const Scalar& c0, const Scalar& c1, const Scalar& c2, const Scalar& c3)
{
    return RationalPoly{c0, 3 * (c1 - c0), 3 * (c0 - 2 * c1 + c2), c3 - 3 * c2 + 3 * c1 - c0};
}

namespace {

struct AxisDerivatives {
    RationalPoly d1, d2, d3;
};

AxisDerivatives axis(const RationalPoly& coord)
{
    AxisDerivatives r;
    r.d1 = differentiate(coord);
    r.d2 = differentiate(r.d1);
    r.d3 = differentiate(r.d2);
    return r;
}

} // namespace

DerivativeBundle derivatives(const CubicBezier& curve)
{
    const auto& p = curve.p;
    const AxisDerivatives x = axis(bernstein_cubic(p[0].x, p[1].x, p[2].x, p[3].x));
    const AxisDerivatives y = axis(bernstein_cubic(p[0].y, p[1].y, p[2].y, p[3].y));
    return {x.d1, x.d2, x.d3, y.d1, y.d2, y.d3};
}

CurvatureModel CurvatureModel::from(const DerivativeBundle& d)
{
    CurvatureModel m;
    m.cross = d.dx * d.ddy - d.ddx * d.dy;
    m.speed2 = d.dx * d.dx + d.dy * d.dy;
    m.jerk_cross = d.dx * d.dddy - d.dddx * d.dy;
    m.accel_dot = d.dx * d.ddx + d.dy * d.ddy;
    m.n_poly = m.jerk_cross * m.speed2 - Scalar(3) * m.cross * m.accel_dot;
    return m;
}

CurvatureModel curvature_model(const CubicBezier& curve) { return CurvatureModel::from(derivatives(curve)); }

CurvatureModel canonical_curvature_model(const CanonicalConfig& cfg)
{
    const Scalar& a = cfg.a;
    const Scalar one_minus_a = 1 - a;
    const AxisDerivatives x = axis(bernstein_cubic(-1, a * cfg.b - one_minus_a, a * cfg.b + one_minus_a, 1));
    // y / h
    const AxisDerivatives y = axis(bernstein_cubic(0, a, a, 0));

    CurvatureModel m;
    m.cross = x.d1 * y.d2 - x.d2 * y.d1;
    m.speed2 = x.d1 * x.d1 + cfg.h2 * (y.d1 * y.d1);
    m.jerk_cross = x.d1 * y.d3 - x.d3 * y.d1;
    m.accel_dot = x.d1 * x.d2 + cfg.h2 * (y.d1 * y.d2);
    m.n_poly = m.jerk_cross * m.speed2 - Scalar(3) * m.cross * m.accel_dot;
    return m;
}

double signed_curvature(const CurvatureModel& model, double t)
{
    const Scalar exact_t = from_double(t);
    const Scalar speed2 = model.speed2(exact_t);
    if (speed2 == 0)
        throw ZeroSpeedError("curve has zero speed at t = " + std::to_string(t));
    return to_double(model.cross(exact_t)) / std::pow(to_double(speed2), 1.5);
}

double signed_curvature(const CubicBezier& curve, double t) { return signed_curvature(curvature_model(curve), t); }

RationalPoly extremum_condition_poly(const CubicBezier& curve) { return curvature_model(curve).n_poly; }

std::vector<RootWindow> inflection_params(const CubicBezier& curve)
{
    const RationalPoly cross = curvature_model(curve).cross;
    if (cross.is_zero())
        throw IdenticallyZeroError("x'y'' - x''y' vanishes identically");
    return isolate_roots(cross, 0, 1, true);
}

CurvatureSampler::CurvatureSampler(const CurvatureModel& model)
{
    for (unsigned k = 0; k < cross_.size(); ++k)
        cross_[k] = to_double(model.cross.coefficient(k));
    for (unsigned k = 0; k < speed2_.size(); ++k)
        speed2_[k] = to_double(model.speed2.coefficient(k));
}

double CurvatureSampler::operator()(double t) const
{
    const double c = (cross_[2] * t + cross_[1]) * t + cross_[0];
    const double s = (((speed2_[4] * t + speed2_[3]) * t + speed2_[2]) * t + speed2_[1]) * t + speed2_[0];
    if (s == 0.0)
        return std::numeric_limits<double>::quiet_NaN();
    return c / (s * std::sqrt(s));
}

} // namespace kcubic
