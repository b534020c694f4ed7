#pragma once

#include "kcubic/curvature.hpp"
#include "kcubic/geometry.hpp"
#include "kcubic/polynomial.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace kcubic {

enum class ExtremaKind {
    Regular,              ///< h > 0
    KinkAtHalf,           ///< Q0 == Q2 != Q1: a doubled-back segment, kink at t = 1/2
    ZeroCurvatureSegment, ///< h = 0, |b| < 1: curvature vanishes identically
    KinkedSegment,        ///< h = 0, |b| >= 1: the hodograph vanishes once
    DegeneratePoint,      ///< Q0 == Q1 == Q2
};

std::string_view to_string(ExtremaKind kind);

/// Oracle grid margin: samples live on [eps, 1 - eps].
inline constexpr double kOracleBoundary = 1e-4;

struct ExtremumLocation {
    RootWindow window; ///< in the parameter of the input curve
    double t = 0.0;
    std::optional<double> kappa; ///< empty at a kink
};

struct ExtremaOptions {
    bool refine = true;
    /// Final window width; 2^-40 by default.
    Scalar refine_width = Scalar(1, 1ul << 40);
};

class ExtremaReport {
public:
    /// Throws TheoremViolation when theorem_regime holds and more than one
    /// location is given, std::logic_error on other broken invariants.
    ExtremaReport(ExtremaKind kind, std::vector<ExtremumLocation> locations,
                  std::vector<RootWindow> degenerate_critical_points, bool theorem_regime);

    ExtremaKind kind() const { return kind_; }
    int count() const { return static_cast<int>(locations_.size()); }
    const std::vector<ExtremumLocation>& locations() const { return locations_; }
    /// Even-multiplicity roots of n_poly: critical points of curvature
    /// without a sign change of kappa'. Not counted as extrema.
    const std::vector<RootWindow>& degenerate_critical_points() const { return degenerate_; }
    bool theorem_regime() const { return theorem_regime_; }

private:
    ExtremaKind kind_;
    std::vector<ExtremumLocation> locations_;
    std::vector<RootWindow> degenerate_;
    bool theorem_regime_;
};

ExtremaKind classify(const SpecialCubic& c);

/// Curvature extrema on the open interval (0,1): odd-multiplicity roots of
/// n_poly that are not also inflections. The analysis runs on the canonical
/// curve; locations are pulled back to the input parameterization.
ExtremaReport count_extrema(const SpecialCubic& c, const ExtremaOptions& options = {});

/// Count only, for a canonical configuration with h > 0 given through h^2.
/// Throws RegimeError when h2 <= 0 or a is outside (0,1].
int count_extrema(const CanonicalConfig& cfg);

/// Brute-force count of strict local extrema of kappa over `samples`
/// uniform points on [eps, 1 - eps]. Runs of equal values are merged.
/// Requires samples >= 1000 and a Regular curve; kinked inputs raise
/// ZeroSpeedError, other degenerate kinds DomainError.
int oracle_count(const SpecialCubic& c, int samples);

/// Whether an oracle count is consistent with an exact report: the oracle
/// may miss extrema whose window reaches within eps of either end.
bool oracle_agrees(const ExtremaReport& report, int oracle, double eps = kOracleBoundary);

/// The unique curvature extremum in (0,1), or nothing when curvature is
/// monotone. Throws RegimeError outside h > 0, 2/3 < a <= 1.
std::optional<double> extremum_location(const SpecialCubic& c);

} // namespace kcubic
