"""Parametrized rational curves in P^r, the two-decomposition intersection
point construction, and linear projection from a point.

A curve is given by r+1 linearly independent binary forms of a common
degree evaluated at (1:t), with (0:1) as the point at infinity.  For the
rational normal curve the ambient coordinates match the moment curve
(1, t, ..., t^r); dividing coordinate i by C(r, i) converts a curve point
into binary-form coefficients, which lets the rank engine certify ranks of
constructed points in the rational-normal-curve case.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb
from typing import Optional

from .binform import BinaryForm, divide_by_linear
from .exactlin import LinearSubspace, Matrix, QQ, kernel_vectors, parse_rational, qstr, rank

_ZERO = QQ(0)

INFINITY = None  # parameter value standing for the point (0:1)


class DegenerateDraw(Exception):
    """The sampled spans fail the generic expected-dimension pattern."""


class ParamCurve:
    """Rational curve t -> (f_0(t) : ... : f_r(t)) in P^r."""

    __slots__ = ("r", "degree", "components")

    def __init__(self, components):
        components = tuple(components)
        if len(components) < 2:
            raise ValueError("need at least two components")
        e = components[0].degree
        if any(c.degree != e for c in components):
            raise ValueError("components must share a degree")
        self.r = len(components) - 1
        self.degree = e
        m = Matrix([list(c.coeffs) for c in components])
        if rank(m) != self.r + 1:
            raise ValueError("degenerate curve: components linearly dependent")
        self.components = components

    def __repr__(self):
        return f"ParamCurve(P^{self.r}, degree={self.degree})"


def curve_point(c: ParamCurve, t):
    """Exact point of the curve at parameter (1:t), or (0:1) for t = INFINITY."""
    if t is INFINITY:
        out = tuple(f.coeffs[-1] for f in c.components)
    else:
        t = QQ(t)
        out = tuple(f.evaluate(1, t) for f in c.components)
    if all(v == 0 for v in out):
        raise ValueError(f"base point at parameter {t!r}: invalid curve")
    return out


def rational_normal_curve(r: int) -> ParamCurve:
    """The moment curve (x^r : x^(r-1) y : ... : y^r)."""
    comps = [BinaryForm(r, [1 if j == i else 0 for j in range(r + 1)])
             for i in range(r + 1)]
    return ParamCurve(comps)


def gap_curve(r: int) -> ParamCurve:
    """Degree r+1 curve using the monomial exponents 0..r-1 and r+1."""
    exps = list(range(r)) + [r + 1]
    comps = [BinaryForm(r + 1, [1 if j == e else 0 for j in range(r + 2)])
             for e in exps]
    return ParamCurve(comps)


def random_curve(r: int, seed=0, bound: int = 20) -> ParamCurve:
    """Random non-degenerate degree r+1 curve (resampled until full rank)."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    for _ in range(200):
        comps = []
        try:
            comps = [BinaryForm(r + 1, [rng.randint(-bound, bound)
                                        for _ in range(r + 2)])
                     for _ in range(r + 1)]
            return ParamCurve(comps)
        except ValueError:
            continue
    raise DegenerateDraw("could not draw an independent component set")


def moment_to_form(point, r: int) -> BinaryForm:
    """Identify a P^r point with a binary form so the moment curve is the
    locus of d-th powers (divide coordinate i by C(r, i))."""
    if len(point) != r + 1:
        raise ValueError("coordinate count mismatch")
    return BinaryForm(r, [QQ(c) * comb(r, i) for i, c in enumerate(point)])


@dataclass(frozen=True)
class QSAResult:
    q: tuple
    span_s: LinearSubspace
    span_a: LinearSubspace
    s_params: tuple
    a_params: tuple


def _span_of_params(c: ParamCurve, params) -> LinearSubspace:
    return LinearSubspace(c.r + 1, [list(curve_point(c, t)) for t in params])


def construct_qSA(c: ParamCurve, s_params, a_params) -> QSAResult:
    """Intersection point of the spans of two disjoint curve samples.

    Both parameter lists must have size r/2+1 (r even); the construction
    succeeds when both spans have the expected projective dimension r/2 and
    meet in a single point that each sample spans irredundantly.  Degenerate
    draws raise; the caller resamples.
    """
    r = c.r
    if r % 2 != 0:
        raise ValueError("ambient dimension must be even")
    half = r // 2 + 1
    s_params, a_params = tuple(s_params), tuple(a_params)
    if len(s_params) != half or len(a_params) != half:
        raise ValueError(f"each parameter list must have size {half}")
    if len(set(s_params)) != half or len(set(a_params)) != half:
        raise ValueError("repeated parameter in a sample")
    if set(s_params) & set(a_params):
        raise ValueError("parameter lists must be disjoint")
    span_s = _span_of_params(c, s_params)
    span_a = _span_of_params(c, a_params)
    if span_s.dim != r // 2 or span_a.dim != r // 2:
        raise DegenerateDraw("sample span is degenerate")
    inter = span_s.intersect(span_a)
    if inter.dim != 0:
        raise DegenerateDraw(f"span intersection has dimension {inter.dim}")
    q = inter.basis[0]
    for params in (s_params, a_params):
        for omit in range(half):
            sub = _span_of_params(c, [t for i, t in enumerate(params) if i != omit])
            if sub.contains(q):
                raise DegenerateDraw("intersection point spanned redundantly")
    return QSAResult(q, span_s, span_a, s_params, a_params)


def _projection_functionals(o):
    """Rows of a full-rank linear map P^N -> P^(N-1) with kernel <o>."""
    if all(QQ(v) == 0 for v in o):
        raise ValueError("cannot project from the zero vector")
    return kernel_vectors(Matrix([list(o)]))


def project_points(points, o):
    """Linear projection of a point list from o (o must miss the points)."""
    funcs = _projection_functionals(o)
    out = []
    for p in points:
        img = tuple(sum(QQ(a) * QQ(b) for a, b in zip(w, p)) for w in funcs)
        if all(v == 0 for v in img):
            raise ValueError("cannot project a point from itself")
        out.append(img)
    return out


def project_curve(c: ParamCurve, t0) -> ParamCurve:
    """Projection of the curve from its own point at parameter t0.

    The image components share the linear factor of t0, which is divided
    out, so the image curve has degree e-1 (a rational normal curve again
    when c is one).
    """
    o = curve_point(c, t0)
    funcs = _projection_functionals(o)
    comps = []
    for w in funcs:
        g = BinaryForm(c.degree, [0] * (c.degree + 1))
        for a, f in zip(w, c.components):
            if a != 0:
                g = g.add(f.scale(a))
        comps.append(g)
    u, v = ((0, 1) if t0 is INFINITY else (1, QQ(t0)))
    comps = [divide_by_linear(g, u, v) for g in comps]
    return ParamCurve(comps)


def parse_curve(text: str) -> ParamCurve:
    """Curve file: first line ``r e``, then r+1 whitespace-separated
    coefficient lines of length e+1 (rational entries)."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty curve file")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError("first line must be 'r e'")
    r, e = int(head[0]), int(head[1])
    if len(lines) != r + 2:
        raise ValueError(f"expected {r + 1} component lines")
    comps = []
    for ln in lines[1:]:
        coeffs = [parse_rational(tok) for tok in ln.split()]
        if len(coeffs) != e + 1:
            raise ValueError(f"component needs {e + 1} coefficients")
        comps.append(BinaryForm(e, coeffs))
    return ParamCurve(comps)


def format_curve(c: ParamCurve) -> str:
    lines = [f"{c.r} {c.degree}"]
    for f in c.components:
        lines.append(" ".join(qstr(x) for x in f.coeffs))
    return "\n".join(lines) + "\n"
