#include "kcubic/geometry.hpp"

#include "kcubic/errors.hpp"

#include <ostream>

namespace kcubic {

Point2 operator+(const Point2& p, const Point2& q) { return {p.x + q.x, p.y + q.y}; }
Point2 operator-(const Point2& p, const Point2& q) { return {p.x - q.x, p.y - q.y}; }
Point2 operator*(const Scalar& s, const Point2& p) { return {s * p.x, s * p.y}; }
Scalar dot(const Point2& p, const Point2& q) { return p.x * q.x + p.y * q.y; }
Scalar cross(const Point2& p, const Point2& q) { return p.x * q.y - p.y * q.x; }

std::ostream& operator<<(std::ostream& os, const Point2& p)
{
    return os << '(' << p.x << ", " << p.y << ')';
}

Point2 CubicBezier::point_at(const Scalar& t) const
{
    const Scalar s = 1 - t;
    std::array<Point2, 4> q = p;
    for (int level = 3; level > 0; --level)
        for (int i = 0; i < level; ++i)
            q[i] = s * q[i] + t * q[i + 1];
    return q[0];
}

CubicBezier CubicBezier::reversed() const { return {{p[3], p[2], p[1], p[0]}}; }

SpecialCubic build_special_cubic(const Point2& q0, const Point2& q1, const Point2& q2, const Scalar& a)
{
    if (a <= 0 || a > 1)
        throw DomainError("blend parameter a must lie in (0,1], got " + to_string(a));
    const Scalar b = 1 - a;
    CubicBezier bezier{{q0, b * q0 + a * q1, a * q1 + b * q2, q2}};
    return {q0, q1, q2, a, std::move(bezier)};
}

bool CanonicalConfig::theorem_regime() const
{
    return h2 > 0 && 3 * a > 2 && a <= 1;
}

SimilarityMap SimilarityMap::translate(const Point2& offset)
{
    SimilarityMap m;
    m.translation = offset;
    return m;
}

SimilarityMap SimilarityMap::scale(const Scalar& factor)
{
    SimilarityMap m;
    m.m00 = factor;
    m.m11 = factor;
    return m;
}

Point2 SimilarityMap::operator()(const Point2& p) const
{
    return {m00 * p.x + m01 * p.y + translation.x, m10 * p.x + m11 * p.y + translation.y};
}

SimilarityMap SimilarityMap::inverse() const
{
    const Scalar det = m00 * m11 - m01 * m10;
    if (det == 0)
        throw DomainError("singular similarity map");
    SimilarityMap inv;
    inv.m00 = m11 / det;
    inv.m01 = -m01 / det;
    inv.m10 = -m10 / det;
    inv.m11 = m00 / det;
    inv.translation = {0, 0};
    const Point2 t = inv(translation);
    inv.translation = {-t.x, -t.y};
    inv.mirrored = mirrored;
    inv.swapped = swapped;
    return inv;
}

SimilarityMap SimilarityMap::then(const SimilarityMap& outer) const
{
    SimilarityMap r;
    r.m00 = outer.m00 * m00 + outer.m01 * m10;
    r.m01 = outer.m00 * m01 + outer.m01 * m11;
    r.m10 = outer.m10 * m00 + outer.m11 * m10;
    r.m11 = outer.m10 * m01 + outer.m11 * m11;
    r.translation = outer(translation);
    r.mirrored = mirrored != outer.mirrored;
    r.swapped = swapped != outer.swapped;
    return r;
}

Point2 apply_map(const SimilarityMap& m, const Point2& p) { return m(p); }

std::variant<CanonicalTriangle, DegenerateCoincident> canonicalize(const Point2& q0, const Point2& q1, const Point2& q2)
{
    if (q0 == q2)
        return DegenerateCoincident{};

    // z -> 2 (z - M) conj(D) / |D|^2 in complex notation: rational even
    // when |D| is not.
    const Point2 d = q2 - q0;
    const Point2 mid = Scalar(1, 2) * (q0 + q2);
    const Scalar k = 2 / dot(d, d);

    SimilarityMap rot;
    rot.m00 = k * d.x;
    rot.m01 = k * d.y;
    rot.m10 = -k * d.y;
    rot.m11 = k * d.x;
    SimilarityMap map = SimilarityMap::translate({-mid.x, -mid.y}).then(rot);

    Point2 apex = map(q1);
    if (apex.x < 0) {
        // Exchange the roles of Q0 and Q2: half-turn about the origin.
        SimilarityMap half_turn = SimilarityMap::scale(-1);
        half_turn.swapped = true;
        map = map.then(half_turn);
        apex = map(q1);
    }
    if (apex.y < 0) {
        SimilarityMap mirror;
        mirror.m11 = -1;
        mirror.mirrored = true;
        map = map.then(mirror);
        apex = map(q1);
    }
    return CanonicalTriangle{apex.x, apex.y, map};
}

SpecialCubic canonical_cubic(const Scalar& b, const Scalar& h, const Scalar& a)
{
    return build_special_cubic({-1, 0}, {b, h}, {1, 0}, a);
}

} // namespace kcubic
