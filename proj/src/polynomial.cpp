#include "kcubic/polynomial.hpp"

#include "kcubic/errors.hpp"

#include <algorithm>
#include <ostream>
#include <utility>

namespace kcubic {

RationalPoly::RationalPoly(std::vector<Scalar> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

RationalPoly::RationalPoly(std::initializer_list<Scalar> coefficients) : coeffs_(coefficients) { trim(); }

RationalPoly RationalPoly::constant(const Scalar& c) { return RationalPoly({c}); }

RationalPoly RationalPoly::monomial(const Scalar& c, unsigned k)
{
    std::vector<Scalar> coeffs(k + 1, Scalar(0));
    coeffs[k] = c;
    return RationalPoly(std::move(coeffs));
}

void RationalPoly::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
}

Scalar RationalPoly::coefficient(unsigned k) const { return k < coeffs_.size() ? coeffs_[k] : Scalar(0); }

const Scalar& RationalPoly::leading() const
{
    if (coeffs_.empty())
        throw ZeroPolynomialError("zero polynomial has no leading coefficient");
    return coeffs_.back();
}

Scalar RationalPoly::operator()(const Scalar& x) const
{
    Scalar acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& other)
{
    if (other.coeffs_.size() > coeffs_.size())
        coeffs_.resize(other.coeffs_.size(), Scalar(0));
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i)
        coeffs_[i] += other.coeffs_[i];
    trim();
    return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& other)
{
    if (other.coeffs_.size() > coeffs_.size())
        coeffs_.resize(other.coeffs_.size(), Scalar(0));
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i)
        coeffs_[i] -= other.coeffs_[i];
    trim();
    return *this;
}

RationalPoly& RationalPoly::operator*=(const RationalPoly& other)
{
    if (is_zero() || other.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    std::vector<Scalar> product(coeffs_.size() + other.coeffs_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < other.coeffs_.size(); ++j)
            product[i + j] += coeffs_[i] * other.coeffs_[j];
    coeffs_ = std::move(product);
    trim();
    return *this;
}

RationalPoly& RationalPoly::operator*=(const Scalar& s)
{
    for (auto& c : coeffs_)
        c *= s;
    trim();
    return *this;
}

std::ostream& operator<<(std::ostream& os, const RationalPoly& p)
{
    if (p.is_zero())
        return os << "0";
    bool first = true;
    for (int k = p.degree(); k >= 0; --k) {
        const Scalar& c = p.coefficients()[k];
        if (c == 0)
            continue;
        if (!first)
            os << (c < 0 ? " - " : " + ");
        else if (c < 0)
            os << "-";
        const Scalar mag = abs(c);
        if (mag != 1 || k == 0)
            os << mag;
        if (k > 0)
            os << (mag != 1 ? "*t" : "t");
        if (k > 1)
            os << '^' << k;
        first = false;
    }
    return os;
}

RationalPoly differentiate(const RationalPoly& p)
{
    if (p.degree() < 1)
        return {};
    std::vector<Scalar> d(p.coefficients().size() - 1);
    for (std::size_t k = 1; k < p.coefficients().size(); ++k)
        d[k - 1] = p.coefficients()[k] * static_cast<long>(k);
    return RationalPoly(std::move(d));
}

Scalar eval(const RationalPoly& p, const Scalar& x) { return p(x); }

double eval_f64(const RationalPoly& p, double x)
{
    double acc = 0.0;
    const auto& c = p.coefficients();
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        acc = acc * x + to_double(*it);
    return acc;
}

RationalPoly compose(const RationalPoly& p, const RationalPoly& q)
{
    RationalPoly acc;
    const auto& c = p.coefficients();
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        acc = acc * q + RationalPoly::constant(*it);
    return acc;
}

DivMod divmod(const RationalPoly& p, const RationalPoly& divisor)
{
    if (divisor.is_zero())
        throw ZeroPolynomialError("division by the zero polynomial");
    std::vector<Scalar> rem = p.coefficients();
    const int dd = divisor.degree();
    const Scalar& lead = divisor.leading();
    if (p.degree() < dd)
        return {RationalPoly{}, p};
    std::vector<Scalar> quot(p.degree() - dd + 1, Scalar(0));
    for (int k = p.degree(); k >= dd; --k) {
        const Scalar factor = rem[k] / lead;
        quot[k - dd] = factor;
        if (factor == 0)
            continue;
        for (int j = 0; j <= dd; ++j)
            rem[k - dd + j] -= factor * divisor.coefficients()[j];
    }
    return {RationalPoly(std::move(quot)), RationalPoly(std::move(rem))};
}

RationalPoly make_monic(const RationalPoly& p)
{
    if (p.is_zero())
        return p;
    const Scalar inv = 1 / p.leading();
    return p * inv;
}

RationalPoly gcd(const RationalPoly& p, const RationalPoly& q)
{
    RationalPoly a = p, b = q;
    while (!b.is_zero()) {
        RationalPoly r = divmod(a, b).remainder;
        a = std::move(b);
        b = make_monic(r);
    }
    return make_monic(a);
}

RationalPoly squarefree_part(const RationalPoly& p)
{
    if (p.is_zero())
        throw ZeroPolynomialError("square-free part of the zero polynomial");
    const RationalPoly g = gcd(p, differentiate(p));
    return make_monic(divmod(p, g).quotient);
}

std::vector<RationalPoly> squarefree_decomposition(const RationalPoly& p)
{
    if (p.is_zero())
        throw ZeroPolynomialError("square-free decomposition of the zero polynomial");
    std::vector<RationalPoly> factors;
    if (p.degree() < 1)
        return factors;

    const RationalPoly dp = differentiate(p);
    const RationalPoly a0 = gcd(p, dp);
    RationalPoly b = divmod(p, a0).quotient;
    RationalPoly c = divmod(dp, a0).quotient;
    RationalPoly d = c - differentiate(b);
    while (b.degree() > 0) {
        RationalPoly a = gcd(b, d);
        factors.push_back(make_monic(a));
        b = divmod(b, a).quotient;
        c = divmod(d, a).quotient;
        d = c - differentiate(b);
    }
    while (!factors.empty() && factors.back().degree() == 0)
        factors.pop_back();
    return factors;
}

std::vector<RationalPoly> sturm_sequence(const RationalPoly& p)
{
    if (p.is_zero())
        throw ZeroPolynomialError("Sturm sequence of the zero polynomial");
    std::vector<RationalPoly> chain{p};
    RationalPoly next = differentiate(p);
    while (!next.is_zero()) {
        chain.push_back(next);
        const RationalPoly& prev = chain[chain.size() - 2];
        const RationalPoly& cur = chain.back();
        RationalPoly r = -divmod(prev, cur).remainder;
        if (!r.is_zero())
            r *= Scalar(1 / abs(r.leading()));
        next = std::move(r);
    }
    return chain;
}

namespace {

int count_changes(const std::vector<int>& signs)
{
    int changes = 0, last = 0;
    for (int s : signs) {
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++changes;
        last = s;
    }
    return changes;
}

} // namespace

int sign_variations(const std::vector<RationalPoly>& chain, const Scalar& x)
{
    std::vector<int> signs;
    signs.reserve(chain.size());
    for (const auto& q : chain)
        signs.push_back(sgn(q(x)));
    return count_changes(signs);
}

int sign_variations_at_infinity(const std::vector<RationalPoly>& chain, bool at_positive_infinity)
{
    std::vector<int> signs;
    signs.reserve(chain.size());
    for (const auto& q : chain) {
        int s = sgn(q.leading());
        if (!at_positive_infinity && q.degree() % 2 == 1)
            s = -s;
        signs.push_back(s);
    }
    return count_changes(signs);
}

int count_distinct_roots(const std::vector<RationalPoly>& chain, const Scalar& lo, const Scalar& hi)
{
    if (hi <= lo)
        return 0;
    return sign_variations(chain, lo) - sign_variations(chain, hi);
}

int count_real_roots(const std::vector<RationalPoly>& chain)
{
    return sign_variations_at_infinity(chain, false) - sign_variations_at_infinity(chain, true);
}

namespace {

RootWindow make_window(Scalar lo, Scalar hi)
{
    RootWindow w;
    w.midpoint = to_double(Scalar((lo + hi) / 2));
    w.lo = std::move(lo);
    w.hi = std::move(hi);
    return w;
}

struct Isolator {
    const RationalPoly& squarefree;
    const std::vector<RationalPoly>& chain;
    std::vector<RootWindow>& out;

    // Roots strictly inside (l, r); roots at l or r are reported by the caller.
    void run(const Scalar& l, const Scalar& r)
    {
        const bool root_at_r = squarefree(r) == 0;
        const int count = count_distinct_roots(chain, l, r) - (root_at_r ? 1 : 0);
        if (count == 0)
            return;
        if (count == 1 && !root_at_r && squarefree(l) != 0) {
            out.push_back(make_window(l, r));
            return;
        }
        const Scalar m = (l + r) / 2;
        run(l, m);
        if (squarefree(m) == 0)
            out.push_back(make_window(m, m));
        run(m, r);
    }
};

} // namespace

std::vector<RootWindow> isolate_roots(const RationalPoly& p, const Scalar& lo, const Scalar& hi, bool open_ends)
{
    if (p.is_zero())
        throw ZeroPolynomialError("cannot isolate roots of the zero polynomial");
    if (hi < lo)
        throw DomainError("empty interval");

    std::vector<RootWindow> windows;
    if (p.degree() == 0)
        return windows;

    const RationalPoly s = squarefree_part(p);
    if (lo == hi) {
        if (!open_ends && s(lo) == 0)
            windows.push_back(make_window(lo, lo));
    } else {
        const auto chain = sturm_sequence(s);
        if (!open_ends && s(lo) == 0)
            windows.push_back(make_window(lo, lo));
        Isolator{s, chain, windows}.run(lo, hi);
        if (!open_ends && s(hi) == 0)
            windows.push_back(make_window(hi, hi));
    }
    std::sort(windows.begin(), windows.end(), [](const RootWindow& x, const RootWindow& y) { return x.lo < y.lo; });

    const auto factors = squarefree_decomposition(p);
    for (auto& w : windows) {
        for (std::size_t i = 0; i < factors.size(); ++i) {
            const auto& f = factors[i];
            if (f.degree() < 1)
                continue;
            const bool holds = w.exact() ? f(w.lo) == 0 : sgn(f(w.lo)) * sgn(f(w.hi)) < 0;
            if (holds) {
                w.multiplicity = static_cast<int>(i) + 1;
                break;
            }
        }
        w.parity = (w.multiplicity % 2 == 1) ? Parity::Odd : Parity::Even;
    }
    return windows;
}

RootWindow refine(const RootWindow& window, const RationalPoly& p, const Scalar& width)
{
    if (window.exact() || window.width() <= width)
        return window;
    const RationalPoly s = squarefree_part(p);
    Scalar lo = window.lo, hi = window.hi;
    const int sign_lo = sgn(s(lo));
    while (hi - lo > width) {
        Scalar m = (lo + hi) / 2;
        const int sm = sgn(s(m));
        if (sm == 0) {
            lo = m;
            hi = m;
            break;
        }
        if (sm == sign_lo)
            lo = std::move(m);
        else
            hi = std::move(m);
    }
    RootWindow out = make_window(std::move(lo), std::move(hi));
    out.parity = window.parity;
    out.multiplicity = window.multiplicity;
    return out;
}

} // namespace kcubic
