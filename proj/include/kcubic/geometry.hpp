#pragma once

#include "kcubic/scalar.hpp"

#include <array>
#include <iosfwd>
#include <variant>

namespace kcubic {

struct Point2 {
    Scalar x;
    Scalar y;

    friend bool operator==(const Point2&, const Point2&) = default;
};

Point2 operator+(const Point2& p, const Point2& q);
Point2 operator-(const Point2& p, const Point2& q);
Point2 operator*(const Scalar& s, const Point2& p);
Scalar dot(const Point2& p, const Point2& q);
Scalar cross(const Point2& p, const Point2& q);
std::ostream& operator<<(std::ostream& os, const Point2& p);

/// Cubic Bezier curve given directly by its four control points.
struct CubicBezier {
    std::array<Point2, 4> p;

    /// Exact point at parameter t (de Casteljau).
    Point2 point_at(const Scalar& t) const;
    /// Same curve traversed backwards, t -> 1 - t.
    CubicBezier reversed() const;
};

/// Cubic built from a triangle (q0, q1, q2) and a blend parameter a:
///   P0 = Q0, P1 = (1-a) Q0 + a Q1, P2 = a Q1 + (1-a) Q2, P3 = Q2.
struct SpecialCubic {
    Point2 q0, q1, q2;
    Scalar a;
    CubicBezier bezier;
};

/// Throws DomainError unless 0 < a <= 1.
SpecialCubic build_special_cubic(const Point2& q0, const Point2& q1, const Point2& q2, const Scalar& a);

/// Canonical parameters of the family, Q0 = (-1,0), Q1 = (b,h), Q2 = (1,0).
/// h is carried only through its square; every quantity the analysis needs
/// depends on h through h^2 or a single global factor h.
struct CanonicalConfig {
    Scalar b;
    Scalar h2;
    Scalar a;

    /// h > 0 and 2/3 < a <= 1.
    bool theorem_regime() const;
};

/// Affine map p -> L p + T with rational L. L is a rotation-scale block,
/// optionally composed with a reflection. The flags record how the map was
/// assembled by canonicalize; they do not affect apply().
struct SimilarityMap {
    Scalar m00 = 1, m01 = 0, m10 = 0, m11 = 1;
    Point2 translation{0, 0};
    bool mirrored = false;
    bool swapped = false;

    static SimilarityMap identity() { return {}; }
    static SimilarityMap translate(const Point2& offset);
    static SimilarityMap scale(const Scalar& factor);

    Point2 operator()(const Point2& p) const;
    /// Exact inverse; the flags are carried over unchanged.
    SimilarityMap inverse() const;
    /// The map "first *this, then outer".
    SimilarityMap then(const SimilarityMap& outer) const;
};

Point2 apply_map(const SimilarityMap& m, const Point2& p);

/// Q0 == Q2: the family has no canonical form.
struct DegenerateCoincident {
    friend bool operator==(DegenerateCoincident, DegenerateCoincident) { return true; }
};

/// Result of canonicalizing a triangle. When `map.swapped` is set the map
/// sends Q2 to (-1,0) and Q0 to (1,0); the canonical curve is then the input
/// curve traversed backwards (t -> 1 - t).
struct CanonicalTriangle {
    Scalar b;
    Scalar h;
    SimilarityMap map;

    CanonicalConfig with_blend(const Scalar& a) const { return {b, h * h, a}; }
    /// Parameter on the canonical curve -> parameter on the input curve.
    Scalar pull_back(const Scalar& t) const { return map.swapped ? Scalar(1 - t) : t; }
    double pull_back(double t) const { return map.swapped ? 1.0 - t : t; }
};

std::variant<CanonicalTriangle, DegenerateCoincident> canonicalize(const Point2& q0, const Point2& q1, const Point2& q2);

/// The special cubic with Q0 = (-1,0), Q1 = (b,h), Q2 = (1,0).
SpecialCubic canonical_cubic(const Scalar& b, const Scalar& h, const Scalar& a);

} // namespace kcubic
