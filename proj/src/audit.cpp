#include "kcubic/audit.hpp"

#include "kcubic/curvature.hpp"
#include "kcubic/errors.hpp"
#include "kcubic/extrema.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>
#include <thread>

namespace kcubic {

namespace {

const RationalPoly T = RationalPoly::variable();

RationalPoly c(const Scalar& v) { return RationalPoly::constant(v); }

const Scalar kTwoThirds(2, 3);
const Scalar kEightNinths(8, 9);

} // namespace

ProofQuantities ProofQuantities::at(const Scalar& a, const Scalar& b, const Scalar& h2)
{
    if (a <= 0 || 3 * a >= 4)
        throw DomainError("proof quantities need 0 < a < 4/3");
    ProofQuantities q;
    q.a = a;
    q.b = b;
    q.h2 = h2;
    const Scalar a2 = a * a;

    q.f0 = (1 + b) * (12 + 3 * a2 * (5 + b) - 4 * a * (7 + b)) + a * (-4 + 3 * a) * h2;
    q.df0_da = 6 * (b * b + 6 * b + 5 + h2) * a - 4 * (b * b + 8 * b + 7 + h2);

    q.f1 = (Scalar(2) * T * T - Scalar(2) * T + c(1)) - a * (Scalar(3) * T * T - Scalar(3) * T + c(1));
    const RationalPoly quad = Scalar(60) * (T - c(1)) * T;
    q.f = Scalar(-3) * a2 * (c(b * b) + b * (c(10) - Scalar(20) * T) + c(h2) + quad + c(13))
        + Scalar(4) * a * (Scalar(5) * b * (c(1) - Scalar(2) * T) + quad + c(11))
        + Scalar(80) * (c(1) - T) * T - c(12);

    if (3 * a != 2)
        q.t0 = Scalar((a * b + 3 * a - 2) / (2 * (3 * a - 2)));
    q.f3 = (24 - 3 * h2) * a2 - 40 * a + 16;

    const Scalar shift = (15 * a - 10) / (3 * a) - b;
    q.f_at_1 = -3 * a2 * shift * shift - 3 * a2 * h2 + 36 * (a - kTwoThirds) * (a - kEightNinths);

    q.n_at_0 = -324 * a2 * q.f0;
    q.n_at_1 = -324 * a2 * (12 * (b - 1) + 4 * a * (7 + (b - 8) * b + h2) - 3 * a2 * (5 + (b - 6) * b + h2));

    const Scalar denom = (4 - 3 * a) * a;
    q.circle_center = (-9 * a2 + 16 * a - 6) / denom;
    q.circle_radius = 6 * (a - 1) * (a - 1) / denom;
    q.circle_radius2 = 36 * pow(Scalar(a - 1), 4) / (denom * denom);
    const Scalar offset = b - q.circle_center;
    q.n_at_1_circle = -324 * a2 * a * (4 - 3 * a) * (offset * offset - q.circle_radius2 + h2);

    q.df0t = 20 * (a * (3 * a - 2) * b + 3 * a * (3 * a - 4) + 4);
    q.d2f = 40 * (12 * a - 9 * a2 - 4);
    return q;
}

RationalPoly reduced_n(const CanonicalConfig& cfg) { return -canonical_curvature_model(cfg).n_poly; }

bool factorization_identity_check(const Scalar& b, const Scalar& h2, const Scalar& a)
{
    const ProofQuantities q = ProofQuantities::at(a, b, h2);
    return differentiate(reduced_n({b, h2, a})) == Scalar(1296) * a * q.f1 * q.f;
}

std::string to_string(AuditMethod method)
{
    return method == AuditMethod::ExactIdentity ? "exact-identity" : "grid-sweep";
}

GridSpec GridSpec::defaults()
{
    GridSpec g;
    const Scalar a_lo(67, 100);
    const Scalar a_step = (1 - a_lo) / 32;
    for (int i = 0; i <= 32; ++i)
        g.a.push_back(a_lo + i * a_step);
    for (int i = 0; i <= 40; ++i)
        g.b.push_back(make_rational(i, 4));
    for (const char* v : {"0.01", "0.1", "1", "4", "25", "100"})
        g.h2.push_back(parse_scalar(v));
    return g;
}

void GridSpec::validate() const
{
    if (a.empty() || b.empty() || h2.empty())
        throw DomainError("audit grid is empty");
    for (const auto& v : a)
        if (3 * v <= 2 || v > 1)
            throw DomainError("audit grid value a = " + kcubic::to_string(v) + " is outside (2/3, 1]");
    for (const auto& v : h2)
        if (v <= 0)
            throw DomainError("audit grid value h^2 = " + kcubic::to_string(v) + " is not positive");
    for (const auto& v : b)
        if (v < 0)
            throw DomainError("audit grid value b = " + kcubic::to_string(v) + " is negative");
}

std::vector<Specialization> random_specializations(std::uint64_t seed, int count)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> a_num(1, 99999), b_num(0, 100000), h_num(1, 100000), den(1, 997);
    std::vector<Specialization> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        Specialization s;
        s.a = kTwoThirds + make_rational(a_num(rng), 300000);
        s.b = make_rational(b_num(rng), 10 * den(rng));
        s.h = make_rational(h_num(rng), 10 * den(rng));
        out.push_back(std::move(s));
    }
    return out;
}

namespace {

struct GridPoint {
    Scalar a, b, h2;
};

GridPoint grid_point(const GridSpec& g, std::size_t index)
{
    const std::size_t nh = g.h2.size(), nb = g.b.size();
    return {g.a[index / (nb * nh)], g.b[(index / nh) % nb], g.h2[index % nh]};
}

template <class F>
void parallel_for(std::size_t n, int threads, F&& body)
{
    const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), 1, std::max<std::size_t>(n, 1));
    if (workers == 1) {
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

struct Verdict {
    bool applicable = true;
    bool ok = true;
    std::optional<Scalar> t;
};

Verdict holds(bool ok) { return {true, ok, std::nullopt}; }
Verdict not_applicable() { return {false, true, std::nullopt}; }

struct Lemma {
    std::string id;
    std::string note;
    std::function<Verdict(const ProofQuantities&)> check;
};

// Evaluates each lemma at every grid point and folds the verdicts in grid
// order, keeping the first failure as the witness.
std::vector<AuditEntry> sweep_grid(const AuditInputs& in, const std::vector<Lemma>& lemmas)
{
    const std::size_t n = in.grid.size();
    std::vector<std::vector<Verdict>> verdicts(n);
    parallel_for(n, in.threads, [&](std::size_t i) {
        const GridPoint p = grid_point(in.grid, i);
        const ProofQuantities q = ProofQuantities::at(p.a, p.b, p.h2);
        auto& row = verdicts[i];
        row.reserve(lemmas.size());
        for (const auto& lemma : lemmas)
            row.push_back(lemma.check(q));
    });

    std::vector<AuditEntry> entries;
    for (std::size_t k = 0; k < lemmas.size(); ++k) {
        AuditEntry e{lemmas[k].id, AuditMethod::GridSweep, true, std::nullopt, lemmas[k].note, 0};
        for (std::size_t i = 0; i < n; ++i) {
            const Verdict& v = verdicts[i][k];
            if (!v.applicable)
                continue;
            ++e.points;
            if (!v.ok && e.passed) {
                const GridPoint p = grid_point(in.grid, i);
                e.passed = false;
                e.witness = AuditWitness{p.a, p.b, p.h2, v.t};
            }
        }
        if (e.points == 0)
            e.note += (e.note.empty() ? "" : " ") + std::string("[no grid point satisfied the hypothesis]");
        entries.push_back(std::move(e));
    }
    return entries;
}

// Same folding for identities over the random specializations.
std::vector<AuditEntry> check_identities(const AuditInputs& in, const std::vector<Lemma>& lemmas)
{
    const std::size_t n = in.samples.size();
    std::vector<std::vector<Verdict>> verdicts(n);
    parallel_for(n, in.threads, [&](std::size_t i) {
        const auto& s = in.samples[i];
        const ProofQuantities q = ProofQuantities::at(s.a, s.b, s.h * s.h);
        for (const auto& lemma : lemmas)
            verdicts[i].push_back(lemma.check(q));
    });
    std::vector<AuditEntry> entries;
    for (std::size_t k = 0; k < lemmas.size(); ++k) {
        AuditEntry e{lemmas[k].id, AuditMethod::ExactIdentity, true, std::nullopt, lemmas[k].note, 0};
        for (std::size_t i = 0; i < n; ++i) {
            const Verdict& v = verdicts[i][k];
            if (!v.applicable)
                continue;
            ++e.points;
            if (!v.ok && e.passed) {
                const auto& s = in.samples[i];
                e.passed = false;
                e.witness = AuditWitness{s.a, s.b, s.h * s.h, v.t};
            }
        }
        entries.push_back(std::move(e));
    }
    return entries;
}

std::vector<AuditEntry> concat(std::vector<AuditEntry> a, std::vector<AuditEntry> b)
{
    a.insert(a.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
    return a;
}

// f0 and f(0, .) as polynomials in a.
RationalPoly f0_in_a(const Scalar& b, const Scalar& h2)
{
    const RationalPoly A = RationalPoly::variable();
    return (1 + b) * (c(12) + Scalar(3 * (5 + b)) * A * A - Scalar(4 * (7 + b)) * A) + h2 * (Scalar(3) * A * A - Scalar(4) * A);
}

RationalPoly f_at_0_in_a(const Scalar& b, const Scalar& h2)
{
    const RationalPoly A = RationalPoly::variable();
    return Scalar(-3 * (b * b + 10 * b + h2 + 13)) * A * A + Scalar(4 * (5 * b + 11)) * A - c(12);
}

RationalPoly f3_in_a(const Scalar& h2)
{
    const RationalPoly A = RationalPoly::variable();
    return Scalar(24 - 3 * h2) * A * A - Scalar(40) * A + c(16);
}

bool in_case_one(const ProofQuantities& q) { return q.b <= 3 - 2 / q.a; }

} // namespace

std::vector<AuditEntry> identity_checks(const AuditInputs& in)
{
    std::vector<Lemma> lemmas;
    lemmas.push_back({"sign_convention",
                      "N(t,a) = -n_poly, n_poly = (x'y'''-x'''y')(x'^2+y'^2) - 3(x'y''-x''y')(x'x''+y'y'')",
                      [](const ProofQuantities& q) {
                          const RationalPoly n = canonical_curvature_model({q.b, q.h2, q.a}).n_poly;
                          const RationalPoly rhs = Scalar(1296) * q.a * q.f1 * q.f;
                          return holds(differentiate(n) == -rhs && n(0) == -q.n_at_0 && n(1) == -q.n_at_1);
                      }});
    lemmas.push_back({"h2_model_matches_direct", "model built from h^2 times h equals the model of the rational curve",
                      [](const ProofQuantities& q) {
                          Scalar h(sqrt(q.h2.get_num()), sqrt(q.h2.get_den()));
                          h.canonicalize();
                          if (h * h != q.h2)
                              return not_applicable();
                          return holds(extremum_condition_poly(canonical_cubic(q.b, h, q.a)) == -(reduced_n({q.b, q.h2, q.a}) * h));
                      }});
    lemmas.push_back({"factorization_dN_dt", "dN/dt = 1296 a h f1 f, h divided out",
                      [](const ProofQuantities& q) { return holds(factorization_identity_check(q.b, q.h2, q.a)); }});
    lemmas.push_back({"degree_bound", "deg N <= 5 as the antiderivative of a degree-4 polynomial",
                      [](const ProofQuantities& q) {
                          return holds(reduced_n({q.b, q.h2, q.a}).degree() <= 5 && (q.f1 * q.f).degree() <= 4);
                      }});
    lemmas.push_back({"n0_closed_form", "N(0,a) = -324 a^2 h f0(a)",
                      [](const ProofQuantities& q) { return holds(reduced_n({q.b, q.h2, q.a})(0) == q.n_at_0); }});
    lemmas.push_back({"n1_expanded_form", "N(1,a) expanded form",
                      [](const ProofQuantities& q) { return holds(reduced_n({q.b, q.h2, q.a})(1) == q.n_at_1); }});
    lemmas.push_back({"n1_circle_form", "N(1,a) circle form",
                      [](const ProofQuantities& q) { return holds(reduced_n({q.b, q.h2, q.a})(1) == q.n_at_1_circle); }});
    lemmas.push_back({"n1_forms_agree", "both N(1,a) forms agree with each other",
                      [](const ProofQuantities& q) { return holds(q.n_at_1 == q.n_at_1_circle); }});
    lemmas.push_back({"f0_derivative_closed_form", "df0/da = 6(b^2+6b+5+h^2)a - 4(b^2+8b+7+h^2)",
                      [](const ProofQuantities& q) {
                          const RationalPoly A = RationalPoly::variable();
                          const RationalPoly closed = Scalar(6 * (q.b * q.b + 6 * q.b + 5 + q.h2)) * A
                                                      - c(4 * (q.b * q.b + 8 * q.b + 7 + q.h2));
                          const RationalPoly f0 = f0_in_a(q.b, q.h2);
                          return holds(differentiate(f0) == closed && f0(q.a) == q.f0 && closed(q.a) == q.df0_da);
                      }});
    lemmas.push_back({"f0_closed_forms", "f0(2/3) = -(4/3)(b + b^2 + h^2), f0(1) = -(1+b)^2 - h^2",
                      [](const ProofQuantities& q) {
                          const RationalPoly f0 = f0_in_a(q.b, q.h2);
                          return holds(f0(kTwoThirds) == Scalar(-4, 3) * (q.b + q.b * q.b + q.h2)
                                       && f0(1) == -(1 + q.b) * (1 + q.b) - q.h2);
                      }});
    lemmas.push_back({"f1_partial_a", "df1/da = -(3t^2 - 3t + 1); f1(t,1) = t - t^2",
                      [](const ProofQuantities& q) {
                          const ProofQuantities shifted = ProofQuantities::at(q.a / 2, q.b, q.h2);
                          const RationalPoly slope = (q.f1 - shifted.f1) * Scalar(2 / q.a);
                          const ProofQuantities at_one = ProofQuantities::at(1, q.b, q.h2);
                          return holds(slope == RationalPoly{-1, 3, -3} && at_one.f1 == RationalPoly{0, 1, -1});
                      }});
    lemmas.push_back({"f_leading_coefficient", "coefficient of t^2 in f is -20(9a^2 - 12a + 4)",
                      [](const ProofQuantities& q) {
                          return holds(q.f.degree() == 2 && q.f.coefficient(2) == -20 * (9 * q.a * q.a - 12 * q.a + 4));
                      }});
    lemmas.push_back({"f_at_0_in_a", "f(0,a) = -3(b^2+10b+h^2+13)a^2 + 4(5b+11)a - 12",
                      [](const ProofQuantities& q) { return holds(q.f(0) == f_at_0_in_a(q.b, q.h2)(q.a)); }});
    lemmas.push_back({"t0_stationary", "df/dt vanishes at t0 = (ab + 3a - 2)/(2(3a - 2))",
                      [](const ProofQuantities& q) {
                          if (!q.t0)
                              return not_applicable();
                          return holds(differentiate(q.f)(*q.t0) == 0);
                      }});
    lemmas.push_back({"f_at_t0_closed_form", "f(t0,a) = 8 - 16a + 6a^2 - 3a^2h^2 + 2a^2b^2",
                      [](const ProofQuantities& q) {
                          if (!q.t0)
                              return not_applicable();
                          const Scalar a2 = q.a * q.a;
                          return holds(q.f(*q.t0) == 8 - 16 * q.a + 6 * a2 - 3 * a2 * q.h2 + 2 * a2 * q.b * q.b);
                      }});
    lemmas.push_back({"f3_substitution", "substituting b = 3 - 2/a into f(t0,a) gives f3(a)",
                      [](const ProofQuantities& q) {
                          const Scalar a2 = q.a * q.a;
                          const Scalar bb = 3 - 2 / q.a;
                          return holds(8 - 16 * q.a + 6 * a2 - 3 * a2 * q.h2 + 2 * a2 * bb * bb == q.f3);
                      }});
    lemmas.push_back({"f_at_1_restructure", "f(1,a) = -3a^2((15a-10)/(3a) - b)^2 - 3a^2h^2 + 36(a-2/3)(a-8/9)",
                      [](const ProofQuantities& q) { return holds(q.f(1) == q.f_at_1); }});
    lemmas.push_back({"df_dt_at_0_closed_form", "df(0,a)/dt = 20[a(3a-2)b + 3a(3a-4) + 4]",
                      [](const ProofQuantities& q) { return holds(differentiate(q.f)(0) == q.df0t); }});
    lemmas.push_back({"d2f_closed_form", "d2f/dt2 = 40(12a - 9a^2 - 4)",
                      [](const ProofQuantities& q) {
                          const RationalPoly d2 = differentiate(differentiate(q.f));
                          return holds(d2.degree() <= 0 && d2.coefficient(0) == q.d2f);
                      }});
    lemmas.push_back({"circle_rightmost_point", "center + radius = 1: the circle never reaches b > 1",
                      [](const ProofQuantities& q) {
                          return holds(q.circle_center + q.circle_radius == 1 && q.circle_radius >= 0
                                       && q.circle_radius * q.circle_radius == q.circle_radius2);
                      }});
    auto entries = check_identities(in, lemmas);

    // Parameter-free facts about 3t^2 - 3t + 1.
    const RationalPoly g{1, -3, 3};
    AuditEntry slope{"f1_slope_factor_positive", AuditMethod::ExactIdentity, true, std::nullopt,
                     "3t^2 - 3t + 1 has no real roots; minimum 1/4 at t = 1/2", 1};
    slope.passed = count_real_roots(sturm_sequence(g)) == 0 && g(Scalar(1, 2)) == Scalar(1, 4)
                   && differentiate(g)(Scalar(1, 2)) == 0 && g.leading() > 0;
    if (!slope.passed)
        slope.witness = AuditWitness{0, 0, 0, Scalar(1, 2)};
    entries.push_back(std::move(slope));
    return entries;
}

std::vector<AuditEntry> n0_positive_check(const AuditInputs& in)
{
    std::vector<Lemma> lemmas;
    lemmas.push_back({"f0_negative_at_ends", "f0(2/3) < 0 and f0(1) < 0",
                      [](const ProofQuantities& q) {
                          const RationalPoly f0 = f0_in_a(q.b, q.h2);
                          return holds(f0(kTwoThirds) < 0 && f0(1) < 0);
                      }});
    lemmas.push_back({"df0_da_negative_at_two_thirds", "df0/da < 0 at a = 2/3 and df0/da increases with a",
                      [](const ProofQuantities& q) {
                          const RationalPoly d = differentiate(f0_in_a(q.b, q.h2));
                          return holds(d(kTwoThirds) < 0 && d.degree() == 1 && d.coefficient(1) > 0);
                      }});
    lemmas.push_back({"f0_negative", "f0(a) < 0", [](const ProofQuantities& q) { return holds(q.f0 < 0); }});
    lemmas.push_back({"n0_positive", "N(0,a) > 0",
                      [](const ProofQuantities& q) {
                          return holds(q.n_at_0 > 0 && reduced_n({q.b, q.h2, q.a})(0) > 0);
                      }});
    return sweep_grid(in, lemmas);
}

std::vector<AuditEntry> f1_nonneg_check(const AuditInputs& in)
{
    std::vector<Lemma> lemmas;
    lemmas.push_back({"f1_nonnegative", "f1(., a) has no roots in (0,1) and f1(1/2, a) = 1/2 - a/4 > 0",
                      [](const ProofQuantities& q) {
                          const bool no_roots = isolate_roots(q.f1, 0, 1, true).empty();
                          const Scalar mid = q.f1(Scalar(1, 2));
                          return holds(no_roots && mid > 0 && mid == Scalar(1, 2) - q.a / 4);
                      }});
    lemmas.push_back({"f_concave", "f is a concave quadratic in t",
                      [](const ProofQuantities& q) { return holds(q.f.degree() == 2 && q.f.coefficient(2) < 0); }});
    lemmas.push_back({"f_at_0_negative", "f(0,2/3) < 0, df(0,a)/da < 0 at 2/3, d2f(0,a)/da2 < 0, hence f(0,a) < 0",
                      [](const ProofQuantities& q) {
                          const RationalPoly g = f_at_0_in_a(q.b, q.h2);
                          const RationalPoly dg = differentiate(g);
                          const RationalPoly d2g = differentiate(dg);
                          return holds(g(kTwoThirds) < 0 && dg(kTwoThirds) < 0 && d2g.degree() == 0 && d2g.leading() < 0
                                       && q.f(0) < 0);
                      }});
    lemmas.push_back({"inflection_free", "x'y'' - x''y' has no roots in (0,1)",
                      [](const ProofQuantities& q) {
                          return holds(isolate_roots(canonical_curvature_model({q.b, q.h2, q.a}).cross, 0, 1, true).empty());
                      }});
    return sweep_grid(in, lemmas);
}

std::vector<AuditEntry> case1_check(const AuditInputs& in)
{
    std::vector<Lemma> lemmas;
    lemmas.push_back({"case1_t0_in_unit_interval", "t0 in [0,1] when b <= 3 - 2/a",
                      [](const ProofQuantities& q) {
                          if (!in_case_one(q))
                              return not_applicable();
                          return Verdict{true, *q.t0 >= 0 && *q.t0 <= 1, q.t0};
                      }});
    lemmas.push_back({"case1_bound_by_f3", "f(t0,a) <= f3(a), with equality only at b = 3 - 2/a",
                      [](const ProofQuantities& q) {
                          if (!in_case_one(q))
                              return not_applicable();
                          const Scalar at_vertex = q.f(*q.t0);
                          return holds(at_vertex < q.f3 || (at_vertex == q.f3 && q.b == 3 - 2 / q.a));
                      }});
    lemmas.push_back({"case1_f3_negative", "f3(2/3) < 0, f3(1) < 0, df3/da(2/3) < 0, hence f3(a) < 0",
                      [](const ProofQuantities& q) {
                          if (!in_case_one(q))
                              return not_applicable();
                          const RationalPoly f3 = f3_in_a(q.h2);
                          return holds(f3(kTwoThirds) < 0 && f3(1) < 0 && differentiate(f3)(kTwoThirds) < 0 && q.f3 < 0);
                      }});
    lemmas.push_back({"case1_max_negative", "max over [0,1] of f is f(t0,a) < 0",
                      [](const ProofQuantities& q) {
                          if (!in_case_one(q))
                              return not_applicable();
                          const Scalar top = q.f(*q.t0);
                          return Verdict{true, top < 0 && top >= q.f(0) && top >= q.f(1), q.t0};
                      }});
    return sweep_grid(in, lemmas);
}

std::vector<AuditEntry> case2_check(const AuditInputs& in)
{
    std::vector<Lemma> lemmas;
    lemmas.push_back({"case2_vertex_beyond_one", "t0 > 1, so f peaks over [0,1] at t = 1",
                      [](const ProofQuantities& q) {
                          if (in_case_one(q))
                              return not_applicable();
                          return Verdict{true, *q.t0 > 1, q.t0};
                      }});
    lemmas.push_back({"case2_d2f_negative", "d2f/dt2 = 40(12a - 9a^2 - 4) < 0",
                      [](const ProofQuantities& q) {
                          if (in_case_one(q))
                              return not_applicable();
                          return holds(q.d2f < 0);
                      }});
    lemmas.push_back({"case2_df0_positive", "df(0,a)/dt > 0, using 3a(3a-4) + 4 > 0",
                      [](const ProofQuantities& q) {
                          if (in_case_one(q))
                              return not_applicable();
                          return holds(q.df0t > 0 && 3 * q.a * (3 * q.a - 4) + 4 > 0);
                      }});
    lemmas.push_back({"case2_f1_positive_needs_large_a_and_b", "f(1,a) > 0 implies a > 8/9 and b > 1",
                      [](const ProofQuantities& q) {
                          if (in_case_one(q) || q.f_at_1 <= 0)
                              return not_applicable();
                          const ProofQuantities at_b1 = ProofQuantities::at(q.a, 1, q.h2);
                          return holds(q.a > kEightNinths && q.b > 1 && at_b1.f_at_1 < 0 && 15 * q.a - 10 > 3 * q.a);
                      }});
    lemmas.push_back({"case2_n1_negative", "N(1,a) < 0 when f(1,a) > 0",
                      [](const ProofQuantities& q) {
                          if (in_case_one(q) || q.f_at_1 <= 0)
                              return not_applicable();
                          return Verdict{true, q.n_at_1 < 0 && reduced_n({q.b, q.h2, q.a})(1) < 0, Scalar(1)};
                      }});
    lemmas.push_back({"case2_outside_circle", "(b,h) lies outside the N(1,a) circle whenever b > 1",
                      [](const ProofQuantities& q) {
                          if (q.b <= 1)
                              return not_applicable();
                          const Scalar offset = q.b - q.circle_center;
                          return holds(offset * offset + q.h2 > q.circle_radius2);
                      }});
    return sweep_grid(in, lemmas);
}

std::vector<AuditEntry> extrema_cross_check(const AuditInputs& in)
{
    std::vector<Lemma> lemmas;
    lemmas.push_back({"extrema_count_matches_analysis",
                      "count_extrema = 1 iff N(1,a) < 0 (N(0,a) > 0 and N is monotone or unimodal), never above 1",
                      [](const ProofQuantities& q) {
                          const int count = count_extrema(CanonicalConfig{q.b, q.h2, q.a});
                          return holds(count <= 1 && count == (q.n_at_1 < 0 ? 1 : 0));
                      }});
    return sweep_grid(in, lemmas);
}

bool AuditReport::passed() const
{
    return std::all_of(entries.begin(), entries.end(), [](const AuditEntry& e) { return e.passed; });
}

namespace {

nlohmann::ordered_json scalar_list(const std::vector<Scalar>& values)
{
    auto arr = nlohmann::ordered_json::array();
    for (const auto& v : values)
        arr.push_back(to_string(v));
    return arr;
}

std::vector<std::string> default_notes()
{
    return {
        "N(0,a), N(1,a) and dN/dt are stated for N = -n_poly, the negation of the extremum bracket "
        "(x'y'''-x'''y')(x'^2+y'^2) - 3(x'y''-x''y')(x'x''+y'y''). Root counts are unaffected.",
        "In d(kappa^2)/dt the third-order cross term is x'''y', not x'''y.",
        "f3(1) = -3h^2 and f3(2/3) = -(4/3)h^2 vanish at h = 0; asserted only for h > 0.",
        "d2f/dt2 = 40(12a - 9a^2 - 4) vanishes at a = 2/3; asserted only for a > 2/3.",
        "f(t0,a) < f3(a) is an equality at b = 3 - 2/a; verified as <= with equality only there.",
        "With f < 0 on [0,1] it is N that decreases monotonically, not curvature: N falls from "
        "N(0,a) > 0 and curvature has one extremum iff N(1,a) < 0 (e.g. every b = 0 configuration).",
        "b >= 0 and h >= 0 are reached by an endpoint swap (t -> 1 - t) and a reflection; "
        "this reduction is an implementation assumption.",
        "Identities are verified exactly at random rational specializations (evidence, not proof); "
        "inequalities are verified exactly at each grid point.",
    };
}

} // namespace

nlohmann::ordered_json AuditReport::to_json() const
{
    nlohmann::ordered_json j;
    j["status"] = passed() ? "pass" : "fail";
    j["seed"] = seed;
    j["identity_samples"] = identity_samples;
    j["grid"] = {{"a", scalar_list(grid.a)}, {"b", scalar_list(grid.b)}, {"h2", scalar_list(grid.h2)}};
    auto arr = nlohmann::ordered_json::array();
    for (const auto& e : entries) {
        nlohmann::ordered_json item;
        item["lemma"] = e.lemma;
        item["method"] = to_string(e.method);
        item["status"] = e.passed ? "pass" : "fail";
        if (e.witness) {
            nlohmann::ordered_json w;
            w["a"] = kcubic::to_string(e.witness->a);
            w["b"] = kcubic::to_string(e.witness->b);
            w["h2"] = kcubic::to_string(e.witness->h2);
            if (e.witness->t)
                w["t"] = kcubic::to_string(*e.witness->t);
            item["witness"] = w;
        } else {
            item["witness"] = nullptr;
        }
        item["note"] = e.note;
        item["points"] = e.points;
        arr.push_back(std::move(item));
    }
    j["entries"] = std::move(arr);
    j["notes"] = notes;
    return j;
}

std::string AuditReport::to_text() const
{
    std::ostringstream os;
    std::size_t width = 0;
    for (const auto& e : entries)
        width = std::max(width, e.lemma.size());
    os << "proof audit: " << (passed() ? "PASS" : "FAIL") << " (" << entries.size() << " lemmas, seed " << seed << ", "
       << identity_samples << " identity samples, grid " << grid.a.size() << " x " << grid.b.size() << " x "
       << grid.h2.size() << ")\n";
    for (const auto& e : entries) {
        os << (e.passed ? "  pass  " : "  FAIL  ") << e.lemma << std::string(width - e.lemma.size() + 2, ' ')
           << (e.method == AuditMethod::ExactIdentity ? "identity" : "grid    ") << "  n=" << e.points << "  " << e.note;
        if (e.witness) {
            os << "  [witness a=" << e.witness->a << " b=" << e.witness->b << " h2=" << e.witness->h2;
            if (e.witness->t)
                os << " t=" << *e.witness->t;
            os << ']';
        }
        os << '\n';
    }
    os << "notes:\n";
    for (const auto& note : notes)
        os << "  - " << note << '\n';
    return os.str();
}

AuditReport run_full_audit(const GridSpec& grid, const AuditOptions& options)
{
    grid.validate();
    if (options.identity_samples < 20)
        throw DomainError("identity checks need at least 20 specializations");

    AuditInputs in{grid, random_specializations(options.seed, options.identity_samples), options.threads};
    AuditReport report;
    report.grid = grid;
    report.seed = options.seed;
    report.identity_samples = options.identity_samples;
    report.entries = identity_checks(in);
    report.entries = concat(std::move(report.entries), n0_positive_check(in));
    report.entries = concat(std::move(report.entries), f1_nonneg_check(in));
    report.entries = concat(std::move(report.entries), case1_check(in));
    report.entries = concat(std::move(report.entries), case2_check(in));
    report.entries = concat(std::move(report.entries), extrema_cross_check(in));
    report.notes = default_notes();
    return report;
}

} // namespace kcubic
