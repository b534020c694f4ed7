#include "kcubic/errors.hpp"
#include "kcubic/geometry.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace kcubic;

TEST_CASE("parse_scalar reads decimals and fractions exactly")
{
    CHECK(parse_scalar("0.75") == Scalar(3, 4));
    CHECK(parse_scalar("-1") == -1);
    CHECK(parse_scalar("7/12") == Scalar(7, 12));
    CHECK(parse_scalar("-6/8") == Scalar(-3, 4));
    CHECK(parse_scalar("1.5e-3") == Scalar(3, 2000));
    CHECK(parse_scalar(".5") == Scalar(1, 2));
    CHECK(parse_scalar("0.1") == Scalar(1, 10));
    CHECK_THROWS_AS(parse_scalar("1/0"), ParseError);
    CHECK_THROWS_AS(parse_scalar("abc"), ParseError);
    CHECK_THROWS_AS(parse_scalar(""), ParseError);
    CHECK_THROWS_AS(parse_scalar("1.2.3"), ParseError);
    CHECK_THROWS_AS(parse_scalar("."), ParseError);
}

TEST_CASE("float view is within one ulp")
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
        const Scalar q = testing::random_rational(rng, -1000, 1000, 9973);
        const double d = to_double(q);
        const double ulp = std::nextafter(std::abs(d), std::numeric_limits<double>::infinity()) - std::abs(d);
        CHECK(abs(from_double(d) - q) <= from_double(ulp));
    }
}

TEST_CASE("build_special_cubic")
{
    SUBCASE("a = 1 collapses the inner points onto Q1")
    {
        const auto c = build_special_cubic({-1, 0}, {0, 1}, {1, 0}, 1);
        CHECK(c.bezier.p[0] == Point2{-1, 0});
        CHECK(c.bezier.p[1] == Point2{0, 1});
        CHECK(c.bezier.p[2] == Point2{0, 1});
        CHECK(c.bezier.p[3] == Point2{1, 0});
    }
    SUBCASE("a = 3/4")
    {
        const auto c = build_special_cubic({-1, 0}, {0, 1}, {1, 0}, Scalar(3, 4));
        CHECK(c.bezier.p[1] == Point2{Scalar(-1, 4), Scalar(3, 4)});
        CHECK(c.bezier.p[2] == Point2{Scalar(1, 4), Scalar(3, 4)});
    }
    SUBCASE("degenerate point")
    {
        const auto c = build_special_cubic({0, 0}, {0, 0}, {0, 0}, Scalar(2, 3));
        for (const auto& p : c.bezier.p)
            CHECK(p == Point2{0, 0});
    }
    SUBCASE("blend parameter outside (0,1]")
    {
        CHECK_THROWS_AS(build_special_cubic({-1, 0}, {0, 1}, {1, 0}, 0), DomainError);
        CHECK_THROWS_AS(build_special_cubic({-1, 0}, {0, 1}, {1, 0}, Scalar(3, 2)), DomainError);
        CHECK_THROWS_AS(build_special_cubic({-1, 0}, {0, 1}, {1, 0}, -1), DomainError);
    }
    SUBCASE("construction identities hold exactly on random input")
    {
        std::mt19937_64 rng(11);
        for (int i = 0; i < 50; ++i) {
            const Point2 q0 = testing::random_point(rng), q1 = testing::random_point(rng), q2 = testing::random_point(rng);
            const Scalar a = make_rational(1 + i, 51);
            const auto c = build_special_cubic(q0, q1, q2, a);
            CHECK(c.bezier.p[0] == q0);
            CHECK(c.bezier.p[3] == q2);
            CHECK(c.bezier.p[1] == Scalar(1 - a) * q0 + a * q1);
            CHECK(c.bezier.p[2] == a * q1 + Scalar(1 - a) * q2);
        }
    }
}

TEST_CASE("de Casteljau midpoint")
{
    const auto c = build_special_cubic({-1, 0}, {0, 1}, {1, 0}, 1);
    CHECK(c.bezier.point_at(Scalar(1, 2)) == Point2{0, Scalar(3, 4)});
}

TEST_CASE("canonicalize")
{
    SUBCASE("already canonical")
    {
        const auto r = canonicalize({-1, 0}, {0, 1}, {1, 0});
        const auto& tri = std::get<CanonicalTriangle>(r);
        CHECK(tri.b == 0);
        CHECK(tri.h == 1);
        CHECK_FALSE(tri.map.mirrored);
        CHECK_FALSE(tri.map.swapped);
        CHECK(tri.map(Point2{5, 7}) == Point2{5, 7});
    }
    SUBCASE("reflection forces h >= 0")
    {
        // Independent construction: translate by (-1,0), unit scale, reflect y.
        SimilarityMap reflect;
        reflect.m11 = -1;
        const SimilarityMap expected = SimilarityMap::translate({-1, 0}).then(reflect);
        const Point2 q1_image = expected(Point2{1, -1});
        REQUIRE(q1_image == Point2{0, 1});

        const auto r = canonicalize({0, 0}, {1, -1}, {2, 0});
        const auto& tri = std::get<CanonicalTriangle>(r);
        CHECK(tri.b == q1_image.x);
        CHECK(tri.h == q1_image.y);
        CHECK(tri.map.mirrored);
        CHECK_FALSE(tri.map.swapped);
        CHECK(apply_map(tri.map, Point2{1, -1}) == Point2{0, 1});
        for (const Point2& p : {Point2{0, 0}, Point2{2, 0}, Point2{Scalar(3, 7), 5}})
            CHECK(tri.map(p) == expected(p));
    }
    SUBCASE("endpoint swap forces b >= 0")
    {
        const auto r = canonicalize({-1, 0}, {-3, 2}, {1, 0});
        const auto& tri = std::get<CanonicalTriangle>(r);
        CHECK(tri.map.swapped);
        CHECK(tri.b == 3);
        CHECK(tri.h == 2);
        CHECK(tri.map(Point2{1, 0}) == Point2{-1, 0});
        CHECK(tri.map(Point2{-1, 0}) == Point2{1, 0});
        CHECK(tri.pull_back(Scalar(1, 4)) == Scalar(3, 4));
    }
    SUBCASE("coincident endpoints")
    {
        const auto r = canonicalize({3, 3}, {3, 3}, {3, 3});
        CHECK(std::holds_alternative<DegenerateCoincident>(r));
    }
}

TEST_CASE("apply_map")
{
    CHECK(apply_map(SimilarityMap::identity(), {5, 7}) == Point2{5, 7});
    const SimilarityMap m = SimilarityMap::translate({1, 0}).then(SimilarityMap::scale(Scalar(1, 2)));
    CHECK(apply_map(m, {1, 0}) == Point2{1, 0});
}

TEST_CASE("property: canonical form and exact round trip on random triangles")
{
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 300; ++i) {
        const Point2 q0 = testing::random_point(rng), q1 = testing::random_point(rng), q2 = testing::random_point(rng);
        const auto r = canonicalize(q0, q1, q2);
        if (q0 == q2) {
            CHECK(std::holds_alternative<DegenerateCoincident>(r));
            continue;
        }
        const auto& tri = std::get<CanonicalTriangle>(r);
        CHECK(tri.b >= 0);
        CHECK(tri.h >= 0);
        const Point2& first = tri.map.swapped ? q2 : q0;
        const Point2& last = tri.map.swapped ? q0 : q2;
        CHECK(tri.map(first) == Point2{-1, 0});
        CHECK(tri.map(last) == Point2{1, 0});
        CHECK(tri.map(q1) == Point2{tri.b, tri.h});

        const SimilarityMap inv = tri.map.inverse();
        for (const Point2& p : {q0, q1, q2, testing::random_point(rng)})
            CHECK(apply_map(inv, apply_map(tri.map, p)) == p);

        // A similarity: |L| has equal column norms, orthogonal columns.
        const auto& m = tri.map;
        CHECK(m.m00 * m.m00 + m.m10 * m.m10 == m.m01 * m.m01 + m.m11 * m.m11);
        CHECK(m.m00 * m.m01 + m.m10 * m.m11 == 0);
    }
}
