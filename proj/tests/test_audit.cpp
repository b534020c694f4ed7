#include "kcubic/audit.hpp"
#include "kcubic/errors.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace kcubic;

namespace {

const AuditEntry& find(const std::vector<AuditEntry>& entries, const std::string& lemma)
{
    for (const auto& e : entries)
        if (e.lemma == lemma)
            return e;
    FAIL("missing lemma " << lemma);
    throw std::logic_error("unreachable");
}

} // namespace

TEST_CASE("factorization identity")
{
    CHECK(factorization_identity_check(0, 1, 1));
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const auto s = testing::random_regime_config(rng);
        CHECK(factorization_identity_check(s.b, s.h * s.h, s.a));
    }
    // Irrational h: only h^2 enters.
    CHECK(factorization_identity_check(Scalar(7, 3), Scalar(1, 10), Scalar(9, 10)));
}

TEST_CASE("N(0,a) and f0 closed forms")
{
    // f0(2/3) = -4/3 at b = 0, h^2 = 1; N(0,2/3)/h = -324 (4/9)(-4/3) = 192.
    const auto q = ProofQuantities::at(Scalar(2, 3), 0, 1);
    CHECK(q.f0 == Scalar(-4, 3));
    CHECK(q.n_at_0 == 192);
    CHECK(ProofQuantities::at(1, 1, 0).f0 == -4);

    std::mt19937_64 rng(6);
    for (int i = 0; i < 10; ++i) {
        const auto s = testing::random_regime_config(rng);
        const Scalar h2 = s.h * s.h;
        const auto p = ProofQuantities::at(s.a, s.b, h2);
        // Central difference of a quadratic in a is exact.
        const Scalar step(1, 1000);
        const Scalar fd = (ProofQuantities::at(s.a + step, s.b, h2).f0 - ProofQuantities::at(s.a - step, s.b, h2).f0) / (2 * step);
        CHECK(fd == p.df0_da);
    }
    CHECK_THROWS_AS(ProofQuantities::at(0, 0, 1), DomainError);
}

TEST_CASE("f1 values")
{
    CHECK(ProofQuantities::at(1, 0, 1).f1 == RationalPoly{0, 1, -1});
    CHECK(ProofQuantities::at(1, 0, 1).f1(Scalar(1, 2)) == Scalar(1, 4));
    for (const Scalar& a : {Scalar(7, 10), Scalar(5, 6), Scalar(1)})
        CHECK(ProofQuantities::at(a, 3, 2).f1(Scalar(1, 2)) == Scalar(1, 2) - a / 4);
    const RationalPoly g{1, -3, 3};
    CHECK(g(Scalar(1, 2)) == Scalar(1, 4));
}

TEST_CASE("Case I quantities")
{
    CHECK(*ProofQuantities::at(1, Scalar(1, 2), 1).t0 == Scalar(3, 4));
    const auto q = ProofQuantities::at(1, 0, 1);
    CHECK(q.f(*q.t0) == -5);
    for (const Scalar& h2 : {Scalar(0), Scalar(1, 3), Scalar(4)})
        CHECK(ProofQuantities::at(1, 0, h2).f3 == -3 * h2);
    CHECK_FALSE(ProofQuantities::at(Scalar(2, 3), 0, 1).t0.has_value());
}

TEST_CASE("Case II quantities")
{
    CHECK(ProofQuantities::at(1, 2, 1).d2f == -40);
    CHECK(ProofQuantities::at(Scalar(2, 3), 2, 1).d2f == 0);

    std::mt19937_64 rng(7);
    for (int i = 0; i < 10; ++i) {
        const Scalar b = testing::random_rational(rng, 0, 10, 7);
        const Scalar h2 = testing::random_rational(rng, 0, 10, 11);
        const auto q = ProofQuantities::at(1, b, h2);
        const Scalar hand = -3 * b * b + 10 * b - 7 - 3 * h2;
        CHECK(q.f(1) == hand);
        CHECK(q.f_at_1 == hand);
    }
    const auto q = ProofQuantities::at(1, 5, 1);
    CHECK(q.circle_center == 1);
    CHECK(q.circle_radius == 0);
    CHECK(q.n_at_1 < 0);
}

TEST_CASE("default grid")
{
    const GridSpec g = GridSpec::defaults();
    CHECK(g.a.size() == 33);
    CHECK(g.a.front() == Scalar(67, 100));
    CHECK(g.a.back() == 1);
    CHECK(g.b.size() == 41);
    CHECK(g.b.back() == 10);
    CHECK(g.h2.size() == 6);
    CHECK(g.h2.front() == Scalar(1, 100));
    CHECK_NOTHROW(g.validate());
}

TEST_CASE("run_full_audit on the default grid passes every lemma")
{
    const AuditReport report = run_full_audit(GridSpec::defaults(), {42, 128, 1});
    for (const auto& e : report.entries) {
        INFO(e.lemma);
        CHECK(e.passed);
        CHECK(e.points > 0);
    }
    CHECK(report.passed());
    CHECK(find(report.entries, "factorization_dN_dt").points == 128);
    CHECK(find(report.entries, "case2_n1_negative").points > 0);
    CHECK(find(report.entries, "case1_max_negative").points > 0);
    CHECK(report.notes.size() >= 6);

    const auto j = report.to_json();
    CHECK(j["status"] == "pass");
    CHECK(j["entries"][0].contains("lemma"));
    CHECK(j["entries"][0].contains("method"));
    CHECK(j["entries"][0].contains("witness"));
    CHECK(j["entries"][0].contains("note"));
    CHECK(report.to_text().rfind("proof audit: PASS", 0) == 0);
}

TEST_CASE("run_full_audit is independent of the thread count")
{
    GridSpec g = GridSpec::defaults();
    g.b = {0, Scalar(1, 2), 2, 7};
    const auto one = run_full_audit(g, {9, 32, 1}).to_json().dump();
    const auto three = run_full_audit(g, {9, 32, 3}).to_json().dump();
    CHECK(one == three);
}

TEST_CASE("run_full_audit preconditions")
{
    GridSpec g = GridSpec::defaults();
    g.a.push_back(Scalar(1, 2));
    CHECK_THROWS_AS(run_full_audit(g), DomainError);

    GridSpec empty;
    CHECK_THROWS_AS(run_full_audit(empty), DomainError);

    GridSpec flat = GridSpec::defaults();
    flat.h2 = {0};
    CHECK_THROWS_AS(run_full_audit(flat), DomainError);
}

TEST_CASE("failed lemmas carry a rational witness")
{
    // Outside the regime f0 turns positive, so the sweep must report it.
    AuditInputs in;
    in.grid.a = {Scalar(1, 2)};
    in.grid.b = {0};
    in.grid.h2 = {1};
    const auto entries = n0_positive_check(in);
    const auto& e = find(entries, "f0_negative");
    CHECK_FALSE(e.passed);
    REQUIRE(e.witness.has_value());
    CHECK(e.witness->a == Scalar(1, 2));
    CHECK(e.witness->b == 0);
    CHECK(e.witness->h2 == 1);
}

TEST_CASE("identity lemmas apply at every specialization")
{
    AuditInputs in;
    in.samples = random_specializations(3, 40);
    for (const auto& e : identity_checks(in)) {
        INFO(e.lemma);
        CHECK(e.passed);
        if (e.lemma != "f1_slope_factor_positive")
            CHECK(e.points == 40);
    }
}
