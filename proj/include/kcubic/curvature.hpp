#pragma once

#include "kcubic/geometry.hpp"
#include "kcubic/polynomial.hpp"

#include <array>
#include <vector>

namespace kcubic {

struct DerivativeBundle {
    RationalPoly dx, ddx, dddx;
    RationalPoly dy, ddy, dddy;
};

/// Power-basis polynomial of one coordinate of a cubic Bernstein curve.
RationalPoly bernstein_cubic(const Scalar& c0, const Scalar& c1, const Scalar& c2, const Scalar& c3);

DerivativeBundle derivatives(const CubicBezier& curve);
inline DerivativeBundle derivatives(const SpecialCubic& c) { return derivatives(c.bezier); }

/// The polynomial pieces of signed curvature
///   kappa = cross / speed2^(3/2)
/// and of its derivative, kappa' = n_poly / speed2^(5/2), where
///   n_poly = jerk_cross * speed2 - 3 * cross * accel_dot.
struct CurvatureModel {
    RationalPoly cross;      ///< x'y'' - x''y'
    RationalPoly speed2;     ///< x'^2 + y'^2
    RationalPoly jerk_cross; ///< x'y''' - x'''y'
    RationalPoly accel_dot;  ///< x'x'' + y'y''
    RationalPoly n_poly;

    static CurvatureModel from(const DerivativeBundle& d);
};

CurvatureModel curvature_model(const CubicBezier& curve);
inline CurvatureModel curvature_model(const SpecialCubic& c) { return curvature_model(c.bezier); }

/// Model of the canonical curve Q0 = (-1,0), Q1 = (b,h), Q2 = (1,0) built
/// from h^2 alone. `cross`, `jerk_cross` and `n_poly` are the true
/// polynomials divided by h (the y coordinate is linear in h); `speed2` and
/// `accel_dot` are exact.
CurvatureModel canonical_curvature_model(const CanonicalConfig& cfg);

/// Signed curvature at t; the parameter is converted to an exact rational
/// and only the final quotient is taken in floating point.
/// Throws ZeroSpeedError where the hodograph vanishes.
double signed_curvature(const CurvatureModel& model, double t);
double signed_curvature(const CubicBezier& curve, double t);
inline double signed_curvature(const SpecialCubic& c, double t) { return signed_curvature(c.bezier, t); }

/// The curvature-extremum polynomial n_poly; may be identically zero.
RationalPoly extremum_condition_poly(const CubicBezier& curve);
inline RationalPoly extremum_condition_poly(const SpecialCubic& c) { return extremum_condition_poly(c.bezier); }

/// Roots of x'y'' - x''y' in (0,1). Throws IdenticallyZeroError when the
/// control polygon is collinear.
std::vector<RootWindow> inflection_params(const CubicBezier& curve);
inline std::vector<RootWindow> inflection_params(const SpecialCubic& c) { return inflection_params(c.bezier); }

/// Double-precision curvature evaluator for dense sampling. Returns NaN
/// where the rounded speed is zero.
class CurvatureSampler {
public:
    explicit CurvatureSampler(const CurvatureModel& model);
    double operator()(double t) const;

private:
    std::array<double, 3> cross_{};
    std::array<double, 5> speed2_{};
};

} // namespace kcubic
