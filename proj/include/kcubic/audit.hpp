#pragma once

#include "kcubic/geometry.hpp"
#include "kcubic/polynomial.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kcubic {

/// Every auxiliary quantity of the at-most-one-extremum argument, evaluated
/// at rational (a, b, h^2). Quantities that carry a global factor h in
/// their defining formula (the N closed forms) are stored divided by h, so
/// everything stays rational for irrational h.
struct ProofQuantities {
    Scalar a, b, h2;

    Scalar f0;            ///< bracket of N(0,a)
    Scalar df0_da;        ///< 6(b^2+6b+5+h^2)a - 4(b^2+8b+7+h^2)
    RationalPoly f1;      ///< 2t^2 - 2t + 1 - (3t^2 - 3t + 1)a
    RationalPoly f;       ///< quadratic factor of dN/dt
    std::optional<Scalar> t0; ///< vertex of f, undefined at a = 2/3
    Scalar f3;            ///< (24 - 3h^2)a^2 - 40a + 16
    Scalar f_at_1;        ///< restructured form of f(1,a)
    Scalar n_at_0;        ///< N(0,a) / h
    Scalar n_at_1;        ///< expanded N(1,a) / h
    Scalar n_at_1_circle; ///< circle form of N(1,a) / h
    Scalar df0t;          ///< 20[a(3a-2)b + 3a(3a-4) + 4]
    Scalar d2f;           ///< 40(12a - 9a^2 - 4)
    Scalar circle_center;
    Scalar circle_radius;
    Scalar circle_radius2;

    /// Requires 0 < a < 4/3.
    static ProofQuantities at(const Scalar& a, const Scalar& b, const Scalar& h2);
};

/// The extremum polynomial in the sign convention of N(t,a),
/// divided by h: -n_poly / h for the canonical curve.
RationalPoly reduced_n(const CanonicalConfig& cfg);

/// d/dt N == 1296 a h f1 f, compared after dividing both sides by h.
bool factorization_identity_check(const Scalar& b, const Scalar& h2, const Scalar& a);

enum class AuditMethod { ExactIdentity, GridSweep };

struct AuditWitness {
    Scalar a, b, h2;
    std::optional<Scalar> t;
};

struct AuditEntry {
    std::string lemma;
    AuditMethod method = AuditMethod::ExactIdentity;
    bool passed = true;
    std::optional<AuditWitness> witness; ///< set on failure
    std::string note;
    std::size_t points = 0; ///< specializations or grid points where the lemma applied
};

struct GridSpec {
    std::vector<Scalar> a;
    std::vector<Scalar> b;
    std::vector<Scalar> h2;

    /// a: 33 points on [0.67, 1]; b: 0..10 step 0.25; h^2 in {0.01, 0.1, 1, 4, 25, 100}.
    static GridSpec defaults();
    /// Throws DomainError unless non-empty with every a in (2/3, 1],
    /// every h^2 > 0 and every b >= 0.
    void validate() const;
    std::size_t size() const { return a.size() * b.size() * h2.size(); }
};

/// A random rational point (a, b, h) used for exact identity checks.
struct Specialization {
    Scalar a, b, h;
};

std::vector<Specialization> random_specializations(std::uint64_t seed, int count);

struct AuditInputs {
    GridSpec grid;
    std::vector<Specialization> samples;
    int threads = 1;
};

// Individual lemma groups. Each returns one entry per lemma.
std::vector<AuditEntry> identity_checks(const AuditInputs& in);
std::vector<AuditEntry> n0_positive_check(const AuditInputs& in);
std::vector<AuditEntry> f1_nonneg_check(const AuditInputs& in);
std::vector<AuditEntry> case1_check(const AuditInputs& in);
std::vector<AuditEntry> case2_check(const AuditInputs& in);
std::vector<AuditEntry> extrema_cross_check(const AuditInputs& in);

struct AuditReport {
    std::vector<AuditEntry> entries;
    std::vector<std::string> notes;
    GridSpec grid;
    std::uint64_t seed = 0;
    int identity_samples = 0;

    bool passed() const;
    nlohmann::ordered_json to_json() const;
    std::string to_text() const;
};

struct AuditOptions {
    std::uint64_t seed = 42;
    int identity_samples = 128;
    int threads = 1;
};

/// Runs every lemma check. Deterministic for a given grid and seed,
/// independent of the thread count.
AuditReport run_full_audit(const GridSpec& grid, const AuditOptions& options = {});

std::string to_string(AuditMethod method);

} // namespace kcubic
