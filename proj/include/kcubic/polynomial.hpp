#pragma once

#include "kcubic/scalar.hpp"

#include <initializer_list>
#include <iosfwd>
#include <vector>

namespace kcubic {

/// Dense univariate polynomial with exact rational coefficients, stored in
/// ascending degree. The zero polynomial has no coefficients and degree -1.
class RationalPoly {
public:
    RationalPoly() = default;
    explicit RationalPoly(std::vector<Scalar> coefficients);
    RationalPoly(std::initializer_list<Scalar> coefficients);

    static RationalPoly constant(const Scalar& c);
    /// c * t^k
    static RationalPoly monomial(const Scalar& c, unsigned k);
    /// The identity polynomial t.
    static RationalPoly variable() { return monomial(1, 1); }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Scalar>& coefficients() const { return coeffs_; }
    /// Coefficient of t^k, zero beyond the degree.
    Scalar coefficient(unsigned k) const;
    /// Throws ZeroPolynomialError for the zero polynomial.
    const Scalar& leading() const;

    Scalar operator()(const Scalar& x) const;

    RationalPoly& operator+=(const RationalPoly& other);
    RationalPoly& operator-=(const RationalPoly& other);
    RationalPoly& operator*=(const RationalPoly& other);
    RationalPoly& operator*=(const Scalar& s);

    friend RationalPoly operator+(RationalPoly p, const RationalPoly& q) { return p += q; }
    friend RationalPoly operator-(RationalPoly p, const RationalPoly& q) { return p -= q; }
    friend RationalPoly operator*(RationalPoly p, const RationalPoly& q) { return p *= q; }
    friend RationalPoly operator*(RationalPoly p, const Scalar& s) { return p *= s; }
    friend RationalPoly operator*(const Scalar& s, RationalPoly p) { return p *= s; }
    friend RationalPoly operator-(RationalPoly p)
    {
        for (auto& c : p.coeffs_)
            c = -c;
        return p;
    }
    friend bool operator==(const RationalPoly&, const RationalPoly&) = default;

private:
    void trim();

    std::vector<Scalar> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const RationalPoly& p);

RationalPoly differentiate(const RationalPoly& p);

Scalar eval(const RationalPoly& p, const Scalar& x);
/// Horner in double precision on the rounded coefficients. Near a root the
/// sign of the result is not reliable; use the exact path for decisions.
double eval_f64(const RationalPoly& p, double x);

/// p(q(t))
RationalPoly compose(const RationalPoly& p, const RationalPoly& q);

struct DivMod {
    RationalPoly quotient;
    RationalPoly remainder;
};

/// Euclidean division; throws ZeroPolynomialError for a zero divisor.
DivMod divmod(const RationalPoly& p, const RationalPoly& divisor);

/// Monic greatest common divisor (zero only if both inputs are zero).
RationalPoly gcd(const RationalPoly& p, const RationalPoly& q);

RationalPoly make_monic(const RationalPoly& p);

/// p / gcd(p, p'), monic.
RationalPoly squarefree_part(const RationalPoly& p);

/// Yun's algorithm: p = c * prod factors[i]^(i+1) with every factor monic,
/// square-free and pairwise coprime. Unit factors are kept as 1 so the index
/// still encodes the multiplicity.
std::vector<RationalPoly> squarefree_decomposition(const RationalPoly& p);

/// Canonical Sturm chain p, p', -rem(...), ... Each member after the first
/// two is scaled by a positive constant, which leaves sign variations intact.
/// Throws ZeroPolynomialError for the zero polynomial.
std::vector<RationalPoly> sturm_sequence(const RationalPoly& p);

int sign_variations(const std::vector<RationalPoly>& chain, const Scalar& x);
/// Sign variations at -infinity (at_positive_infinity = false) or +infinity.
int sign_variations_at_infinity(const std::vector<RationalPoly>& chain, bool at_positive_infinity);

/// Number of distinct real roots in (lo, hi].
int count_distinct_roots(const std::vector<RationalPoly>& chain, const Scalar& lo, const Scalar& hi);
/// Number of distinct real roots on the whole real line.
int count_real_roots(const std::vector<RationalPoly>& chain);

enum class Parity { Odd, Even };

/// An interval holding exactly one distinct real root of the polynomial it
/// was isolated for. lo == hi marks a root located exactly. Otherwise the
/// polynomial is nonzero at both ends, and changes sign across the window
/// iff the parity is odd.
struct RootWindow {
    Scalar lo;
    Scalar hi;
    Parity parity = Parity::Odd;
    int multiplicity = 1;
    double midpoint = 0.0;

    bool exact() const { return lo == hi; }
    Scalar width() const { return hi - lo; }
};

/// Windows for the distinct real roots of p in (lo, hi) when open_ends is
/// true, [lo, hi] otherwise; sorted and disjoint.
std::vector<RootWindow> isolate_roots(const RationalPoly& p, const Scalar& lo, const Scalar& hi, bool open_ends);

/// Bisects until the window is no wider than `width`.
RootWindow refine(const RootWindow& window, const RationalPoly& p, const Scalar& width);

} // namespace kcubic
