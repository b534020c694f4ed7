"""Exact curvature analysis of blended quadratic-to-cubic Bezier curves.

Coordinates and the blend parameter accept int, Fraction, float (taken at
its exact binary value) or decimal / "p/q" strings. Exact results come back
as Fraction.
"""

from fractions import Fraction
import json

from . import _core
from ._core import TheoremViolation

__all__ = [
    "TheoremViolation",
    "canonicalize",
    "control_points",
    "count_extrema",
    "extremum_condition_poly",
    "oracle_count",
    "point_at",
    "run_full_audit",
    "signed_curvature",
]


def _text(value):
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        raise TypeError("expected a number, got bool")
    if isinstance(value, (int, Fraction)):
        return str(value)
    if isinstance(value, float):
        return str(Fraction(value))
    raise TypeError(f"expected a number or numeric string, got {type(value).__name__}")


def _point(p):
    x, y = p
    return (_text(x), _text(y))


def _frac(s):
    return Fraction(s)


def control_points(q0, q1, q2, a):
    """The four cubic control points as Fraction pairs."""
    pts = _core.control_points(_point(q0), _point(q1), _point(q2), _text(a))
    return [(_frac(x), _frac(y)) for x, y in pts]


def point_at(q0, q1, q2, a, t):
    x, y = _core.point_at(_point(q0), _point(q1), _point(q2), _text(a), _text(t))
    return (_frac(x), _frac(y))


def canonicalize(q0, q1, q2):
    """Canonical apex (b, h) and the flags of the normalizing map, or None
    when all three points coincide."""
    r = _core.canonicalize(_point(q0), _point(q1), _point(q2))
    if r is None:
        return None
    r["b"] = _frac(r["b"])
    r["h"] = _frac(r["h"])
    return r


def signed_curvature(q0, q1, q2, a, t):
    return _core.signed_curvature(_point(q0), _point(q1), _point(q2), _text(a), float(t))


def extremum_condition_poly(q0, q1, q2, a):
    """Coefficients in ascending order of t."""
    return [_frac(c) for c in _core.extremum_condition_poly(_point(q0), _point(q1), _point(q2), _text(a))]


def count_extrema(q0, q1, q2, a):
    return _core.count_extrema(_point(q0), _point(q1), _point(q2), _text(a))


def oracle_count(q0, q1, q2, a, samples=100_000):
    return _core.oracle_count(_point(q0), _point(q1), _point(q2), _text(a), samples)


def run_full_audit(seed=42, identity_samples=128, threads=1):
    """Default-grid audit as a dict with the same fields as the CLI JSON."""
    return json.loads(_core.run_full_audit(seed, identity_samples, threads))
