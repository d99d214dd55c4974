"""Binary forms, apolarity, catalecticants, and the irredundancy machinery.

A degree-d form F = sum c_i x^(d-i) y^i is stored by its coefficient vector
(c_0, ..., c_d).  Dual forms g(X, Y) of degree s act on forms by partial
differentiation: X acts as d/dx, Y as d/dy.  Point sets on the rational
normal curve are never represented by their (generally irrational) roots;
a set of t distinct points is carried implicitly as a squarefree dual form
of degree t, and spans / membership / irredundancy are decided through
kernels and gcds.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactlin import QQ, Matrix, LinearSubspace, det, kernel, parse_rational, qstr

_ZERO = QQ(0)
_ONE = QQ(1)


class BinaryForm:
    """Homogeneous binary form; coeffs[i] is the coefficient of x^(d-i) y^i."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree, coeffs):
        coeffs = tuple(QQ(c) for c in coeffs)
        if len(coeffs) != degree + 1:
            raise ValueError("coefficient vector length must be degree+1")
        self.degree = degree
        self.coeffs = coeffs

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, BinaryForm)
                and self.degree == other.degree
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.degree, self.coeffs))

    def __repr__(self):
        return f"BinaryForm({format_form(self)!r})"

    def evaluate(self, u, v):
        u, v = QQ(u), QQ(v)
        d = self.degree
        return sum((c * u ** (d - i) * v ** i for i, c in enumerate(self.coeffs)), _ZERO)

    def scale(self, a):
        return BinaryForm(self.degree, [QQ(a) * c for c in self.coeffs])

    def add(self, other):
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return BinaryForm(self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def mul(self, other):
        d = self.degree + other.degree
        out = [_ZERO] * (d + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return BinaryForm(d, out)

    def dx(self):
        """Partial derivative with respect to the first variable."""
        d = self.degree
        if d == 0:
            return BinaryForm(0, [0])
        return BinaryForm(d - 1, [(d - j) * self.coeffs[j] for j in range(d)])

    def dy(self):
        d = self.degree
        if d == 0:
            return BinaryForm(0, [0])
        return BinaryForm(d - 1, [(j + 1) * self.coeffs[j + 1] for j in range(d)])

    def normalized(self):
        """Scale so the first nonzero coefficient is 1."""
        for c in self.coeffs:
            if c != 0:
                return self.scale(_ONE / c)
        return self


# DualForm shares the representation; the name marks which ring an object
# lives in (differential operators vs. forms being differentiated).
DualForm = BinaryForm


def monomial(degree, i):
    """x^(degree-i) y^i (or X^(degree-i) Y^i on the dual side)."""
    return BinaryForm(degree, [1 if j == i else 0 for j in range(degree + 1)])


def linear_factor(u, v):
    """The linear dual form v*X - u*Y vanishing at the projective point (u:v)."""
    return BinaryForm(1, [QQ(v), -QQ(u)])


def form_from_roots(points):
    """Product of linear factors for the given (u:v) points."""
    g = BinaryForm(0, [1])
    for u, v in points:
        g = g.mul(linear_factor(u, v))
    return g


def parse_form(text: str) -> BinaryForm:
    """Parse the CLI encoding ``d:c0,c1,...,cd`` with rational entries."""
    try:
        head, tail = text.split(":", 1)
        d = int(head)
        coeffs = [parse_rational(c) for c in tail.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad form encoding {text!r}: {exc}") from None
    if d < 0 or len(coeffs) != d + 1:
        raise ValueError(f"bad form encoding {text!r}: need {d + 1} coefficients")
    return BinaryForm(d, coeffs)


def format_form(f: BinaryForm) -> str:
    return f"{f.degree}:" + ",".join(qstr(c) for c in f.coeffs)


def _falling(n, k):
    out = 1
    for i in range(k):
        out *= n - i
    return out


def contract(g: DualForm, f: BinaryForm) -> BinaryForm:
    """Apply the differential operator g to f (degree drops by deg g)."""
    s, d = g.degree, f.degree
    if s > d:
        raise ValueError(f"cannot contract degree {s} operator into degree {d} form")
    out = [_ZERO] * (d - s + 1)
    for m in range(d - s + 1):
        acc = _ZERO
        for j in range(s + 1):
            gj = g.coeffs[j]
            if gj == 0:
                continue
            acc += gj * f.coeffs[m + j] * (_falling(d - m - j, s - j) * _falling(m + j, j))
        out[m] = acc
    return BinaryForm(d - s, out)


def catalecticant(f: BinaryForm, s: int) -> Matrix:
    """Matrix of g -> contract(g, f) from dual degree s to form degree d-s."""
    d = f.degree
    if not 0 <= s <= d:
        raise ValueError("catalecticant degree out of range")
    rows = []
    for m in range(d - s + 1):
        row = []
        for j in range(s + 1):
            row.append(f.coeffs[m + j] * (_falling(d - m - j, s - j) * _falling(m + j, j)))
        rows.append(row)
    return Matrix(rows)


@dataclass(frozen=True)
class ApolarSlice:
    """Degree-t slice of the apolar ideal of a binary form."""

    source_form: BinaryForm
    slice_degree: int
    basis: tuple

    @property
    def affine_dim(self):
        return len(self.basis)


def apolar_slice(f: BinaryForm, t: int) -> ApolarSlice:
    """Basis of the dual forms of degree t annihilating f."""
    d = f.degree
    if not 0 <= t <= d + 1:
        raise ValueError("slice degree out of range")
    if t == d + 1:
        basis = tuple(monomial(t, j) for j in range(t + 1))
        return ApolarSlice(f, t, basis)
    ker = kernel(catalecticant(f, t))
    basis = tuple(BinaryForm(t, row) for row in ker.basis)
    return ApolarSlice(f, t, basis)


def sylvester_resultant(f: BinaryForm, g: BinaryForm):
    """Homogeneous resultant via the Sylvester matrix at the formal degrees.

    Treating both inputs as honest binary forms of their stated degrees,
    the resultant vanishes exactly when they share a projective root;
    roots at (1:0) and (0:1) need no special casing in this convention.
    """
    m, n = f.degree, g.degree
    if m == 0 or n == 0:
        c = f.coeffs[0] if m == 0 else g.coeffs[0]
        other = n if m == 0 else m
        return c ** other
    size = m + n
    rows = []
    for i in range(n):
        rows.append([_ZERO] * i + list(f.coeffs) + [_ZERO] * (size - m - 1 - i))
    for i in range(m):
        rows.append([_ZERO] * i + list(g.coeffs) + [_ZERO] * (size - n - 1 - i))
    return det(Matrix(rows))


def squarefree(g: DualForm) -> bool:
    """True iff g has deg(g) distinct projective roots."""
    if g.is_zero():
        raise ValueError("zero form has no root divisor")
    t = g.degree
    if t <= 1:
        return True
    return sylvester_resultant(g.dx(), g.dy()) != 0


def _dehomogenize(g: BinaryForm):
    """Return (k, coeffs) with g = X^k * hom(p), p(z) = sum coeffs[j] z^j."""
    cs = list(g.coeffs)
    deg = -1
    for j, c in enumerate(cs):
        if c != 0:
            deg = j
    if deg < 0:
        return g.degree, []
    return g.degree - deg, cs[: deg + 1]


def _poly_gcd(p, q):
    """Monic gcd of univariate rational coefficient lists (ascending)."""
    def strip(a):
        while a and a[-1] == 0:
            a = a[:-1]
        return a

    p, q = strip(list(p)), strip(list(q))
    while q:
        # remainder of p mod q
        r = list(p)
        dq = len(q) - 1
        lq = q[-1]
        while len(r) - 1 >= dq and r:
            lr = r[-1]
            if lr != 0:
                f = lr / lq
                off = len(r) - 1 - dq
                for i in range(dq + 1):
                    r[off + i] -= f * q[i]
            r = r[:-1]
        p, q = q, strip(r)
    if not p:
        return []
    lead = p[-1]
    return [c / lead for c in p]


def form_gcd(g: DualForm, h: DualForm) -> DualForm:
    """Normalized gcd of two binary forms (roots at (1:0)/(0:1) included)."""
    if g.is_zero() and h.is_zero():
        raise ValueError("gcd of two zero forms")
    if g.is_zero():
        return h.normalized()
    if h.is_zero():
        return g.normalized()
    kg, pg = _dehomogenize(g)
    kh, ph = _dehomogenize(h)
    k = min(kg, kh)
    p = _poly_gcd(pg, ph)
    deg = k + len(p) - 1
    coeffs = list(p) + [_ZERO] * k
    return BinaryForm(deg, coeffs).normalized()


def multigcd(forms) -> DualForm:
    forms = [f for f in forms if not f.is_zero()]
    if not forms:
        raise ValueError("gcd of zero forms")
    g = forms[0].normalized()
    for f in forms[1:]:
        if g.degree == 0:
            break
        g = form_gcd(g, f)
    return g


def divide_by_linear(g: BinaryForm, u, v) -> BinaryForm:
    """Exact quotient g / (v*X - u*Y); requires g(u, v) = 0."""
    u, v = QQ(u), QQ(v)
    if g.evaluate(u, v) != 0:
        raise ValueError("linear form does not divide: point is not a root")
    t = g.degree
    if v != 0:
        h = []
        prev = _ZERO
        for j in range(t):
            cur = (g.coeffs[j] + u * prev) / v
            h.append(cur)
            prev = cur
        return BinaryForm(t - 1, h)
    # root (1:0): divisor is -u*Y
    return BinaryForm(t - 1, [-c / u for c in g.coeffs[1:]])


def division_family(g: DualForm, f: BinaryForm):
    """Symbolic one-point-removal conditions for the point set of g.

    For a root (u:v) of g with v != 0, synthetic division of g by v*X - u*Y
    gives (up to the harmless factor v^t) a quotient whose coefficients are
    binary forms H_j(u, v) of degree t-1.  The returned forms p_m(u, v) are
    the coefficients of contract(quotient, f): they vanish simultaneously at
    (u:v) exactly when f lies in the span of the remaining t-1 points.
    Roots at (1:0) are degenerate for this scaling and are handled by
    explicit division in spans_redundantly.
    """
    t, d = g.degree, f.degree
    if t < 2:
        raise ValueError("need at least two points to remove one")
    if t > d + 1:
        raise ValueError("family degree exceeds ambient range")
    if not squarefree(g):
        raise ValueError("division family requires a squarefree form")
    # H_j(u, v) = sum_{i<=j} g_i u^(j-i) v^(t-1-j+i), as a form in (u, v)
    hs = []
    for j in range(t):
        coeffs = [_ZERO] * t  # degree t-1 in (u, v)
        for i in range(j + 1):
            coeffs[t - 1 - j + i] += g.coeffs[i]
        hs.append(coeffs)
    cat = catalecticant(f, t - 1)
    family = []
    for m in range(d - t + 2):
        acc = [_ZERO] * t
        for j in range(t):
            km = cat[m, j]
            if km == 0:
                continue
            for a in range(t):
                acc[a] += km * hs[j][a]
        family.append(BinaryForm(t - 1, acc))
    return family


def spans_redundantly(g: DualForm, f: BinaryForm) -> bool:
    """True iff some proper subset of the point set of g still spans f.

    Root-extraction-free: checks the two rational boundary roots explicitly
    and all remaining roots at once through gcd(g, division_family(g, f)).
    """
    t = g.degree
    if t < 2:
        return False
    if g.coeffs[0] == 0:  # (1:0) is a root, i.e. Y | g
        h = BinaryForm(t - 1, g.coeffs[1:])
        if contract(h, f).is_zero():
            return True
    if g.coeffs[t] == 0:  # (0:1) is a root, i.e. X | g
        h = BinaryForm(t - 1, g.coeffs[:t])
        if contract(h, f).is_zero():
            return True
    family = division_family(g, f)
    common = multigcd([g] + family)
    if g.coeffs[0] == 0 and common.degree > 0 and common.coeffs[0] == 0:
        # strip the spurious (1:0) factor introduced by the v^t scaling
        common = BinaryForm(common.degree - 1, common.coeffs[1:])
    return common.degree >= 1
