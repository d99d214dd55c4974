"""Veronese embeddings of P^n, Hilbert functions of finite point sets, the
special-configuration detector, and the mixed line-plus-points instances.

Points carry exact rational coordinates.  h^1 of the twisted ideal sheaf of
a finite set is the rank defect of the monomial evaluation matrix, so every
statement here is a statement about exact ranks.  Configuration search is
exhaustive at desk scale (|S| <= 4d-5): lines come from point pairs, conics
from small seed subsets inside candidate planes, cubics from complement
enumeration.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Optional

import sympy

from .binform import BinaryForm
from .exactlin import LinearSubspace, Matrix, QQ, kernel_vectors, rank, _rref_rows
from .rankengine import (
    FamilyExhausted,
    _rng,
    generate_with_profile,
    rank_profile,
    sample_decomposition,
)

_ZERO = QQ(0)


def monomial_exponents(nvars: int, degree: int):
    """All exponent vectors of the given total degree, lex descending."""
    if nvars == 1:
        return [(degree,)]
    out = []
    for e0 in range(degree, -1, -1):
        for rest in monomial_exponents(nvars - 1, degree - e0):
            out.append((e0,) + rest)
    return out


class VeroneseMap:
    """Order-d Veronese embedding of P^n into P^r, r = C(n+d, n) - 1."""

    __slots__ = ("n", "d", "monomials", "r", "_pure")

    def __init__(self, n: int, d: int):
        if n < 1 or d < 1:
            raise ValueError("need n >= 1 and d >= 1")
        self.n = n
        self.d = d
        self.monomials = tuple(monomial_exponents(n + 1, d))
        self.r = comb(n + d, n) - 1
        # positions of the pure x0^(d-i) x1^i monomials, indexed by i
        pure = {}
        for pos, e in enumerate(self.monomials):
            if all(v == 0 for v in e[2:]):
                pure[e[1]] = pos
        self._pure = tuple(pure[i] for i in range(d + 1))

    def embed(self, p):
        """Evaluate all degree-d monomials at the point p of P^n."""
        p = tuple(QQ(c) for c in p)
        if len(p) != self.n + 1:
            raise ValueError("point has wrong coordinate count")
        if all(c == 0 for c in p):
            raise ValueError("zero vector is not a projective point")
        out = []
        for e in self.monomials:
            v = QQ(1)
            for c, k in zip(p, e):
                if k:
                    v *= c ** k
            out.append(v)
        return tuple(out)

    def line_embed(self, coeffs):
        """Push a binary-form coefficient vector on the coordinate line into P^r.

        The line {x2 = ... = xn = 0} embeds onto the coordinate subspace of
        pure monomials; identifying P^d with degree-d binary forms by plain
        coefficients means dividing coordinate i by C(d, i).
        """
        if len(coeffs) != self.d + 1:
            raise ValueError("coefficient vector has wrong length")
        out = [_ZERO] * (self.r + 1)
        for i, c in enumerate(coeffs):
            out[self._pure[i]] = QQ(c) / comb(self.d, i)
        return tuple(out)

    def line_span(self) -> LinearSubspace:
        """The span of the embedded coordinate line, as a coordinate subspace."""
        rows = []
        for pos in self._pure:
            row = [0] * (self.r + 1)
            row[pos] = 1
            rows.append(row)
        return LinearSubspace(self.r + 1, rows)


def evaluation_matrix(vm_n: int, points, degree: int) -> Matrix:
    mons = monomial_exponents(vm_n + 1, degree)
    rows = []
    for p in points:
        p = tuple(QQ(c) for c in p)
        row = []
        for e in mons:
            v = QQ(1)
            for c, k in zip(p, e):
                if k:
                    v *= c ** k
            row.append(v)
        rows.append(row)
    return Matrix(rows)


@dataclass(frozen=True)
class Witness:
    kind: str           # "line" | "conic" | "cubic_ci" | "cubic"
    points: tuple       # indices into S
    locus: tuple        # defining data (coefficient tuples)


@dataclass(frozen=True)
class H1Report:
    t: int
    h0: int
    h1: int
    witness: Optional[Witness] = None


def h_values(vm: VeroneseMap, points, t: int) -> H1Report:
    """h^0 and h^1 of the degree-t ideal sheaf of a finite point set."""
    if t < 1:
        raise ValueError("twist must be positive")
    pts = list(points)
    _check_distinct(pts)
    r = rank(evaluation_matrix(vm.n, pts, t)) if pts else 0
    return H1Report(t, comb(vm.n + t, vm.n) - r, len(pts) - r)


def _check_distinct(pts):
    seen = set()
    for p in pts:
        key = _primitive(p)
        if key in seen:
            raise ValueError("point set has a repeated point")
        seen.add(key)


def _primitive(p):
    """Scale a rational point to a canonical coprime integer tuple."""
    from math import gcd

    qs = [QQ(c) for c in p]
    l = 1
    for c in qs:
        d = int(c.denominator)
        l = l * d // gcd(l, d)
    ints = [int(c * l) for c in qs]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    for v in ints:
        if v != 0:
            if v < 0:
                ints = [-w for w in ints]
            break
    return tuple(ints)


def _int_rank(rows):
    """Rank of a small integer matrix by division-free elimination."""
    a = [list(r) for r in rows]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    rank_ = 0
    for c in range(ncols):
        piv = None
        for i in range(rank_, nrows):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[rank_], a[piv] = a[piv], a[rank_]
        pr = a[rank_]
        for i in range(rank_ + 1, nrows):
            ri = a[i]
            if ri[c] != 0:
                a[i] = [pr[c] * x - ri[c] * y for x, y in zip(ri, pr)]
        rank_ += 1
        if rank_ == nrows:
            break
    return rank_


def _collinear(p, q, x):
    return _int_rank([list(p), list(q), list(x)]) <= 2


def _line_groups(pts):
    """Maximal collinear index groups of size >= 2, deduped."""
    n = len(pts)
    seen = set()
    groups = []
    for i in range(n):
        for j in range(i + 1, n):
            members = [k for k in range(n)
                       if k in (i, j) or _collinear(pts[i], pts[j], pts[k])]
            key = frozenset(members)
            if key not in seen:
                seen.add(key)
                groups.append(members)
    return groups


def _plane_normal(p, q, s):
    """Primitive normal of the plane through three points of P^3 (or None)."""
    m = [list(p), list(q), list(s)]
    normal = []
    sign = 1
    for drop in range(4):
        sub = [[row[c] for c in range(4) if c != drop] for row in m]
        d = (sub[0][0] * (sub[1][1] * sub[2][2] - sub[1][2] * sub[2][1])
             - sub[0][1] * (sub[1][0] * sub[2][2] - sub[1][2] * sub[2][0])
             + sub[0][2] * (sub[1][0] * sub[2][1] - sub[1][1] * sub[2][0]))
        normal.append(sign * d)
        sign = -sign
    if all(v == 0 for v in normal):
        return None
    return _primitive(normal)


def _planar_groups(pts, n, min_size):
    """Index groups lying in a common plane (all of S when n == 2)."""
    if n == 2:
        return [list(range(len(pts)))] if len(pts) >= min_size else []
    if n != 3:
        raise ValueError("configuration search supports n in {2, 3}")
    seen = set()
    groups = []
    npts = len(pts)
    for i, j, k in itertools.combinations(range(npts), 3):
        nrm = _plane_normal(pts[i], pts[j], pts[k])
        if nrm is None or nrm in seen:
            continue
        seen.add(nrm)
        members = [m for m in range(npts)
                   if sum(a * b for a, b in zip(nrm, pts[m])) == 0]
        if len(members) >= min_size:
            groups.append(members)
    return groups


def _plane_coords(pts, members):
    """Map the member points into P^2 coordinates inside their plane."""
    rows = [pts[members[0]]]
    for m in members[1:]:
        if _int_rank(rows + [pts[m]]) > len(rows):
            rows.append(pts[m])
        if len(rows) == 3:
            break
    basis = Matrix([list(r) for r in rows])
    bt = list(zip(*basis.entries))  # ncoords x 3
    out = []
    for m in members:
        aug = [list(row) + [QQ(c)] for row, c in zip(bt, pts[m])]
        red, pivots = _rref_rows(aug, 3)
        sol = [_ZERO, _ZERO, _ZERO]
        for r, pc in enumerate(pivots):
            sol[pc] = red[r][3]
        out.append(_primitive(sol))
    return out


def _intersection_point(pts, g1, g2):
    a = LinearSubspace(len(pts[0]), [list(pts[g1[0]]), list(pts[g1[1]])])
    b = LinearSubspace(len(pts[0]), [list(pts[g2[0]]), list(pts[g2[1]])])
    inter = a.intersect(b)
    if inter.dim != 0:
        return None
    return _primitive(inter.basis[0])


def _conic_symmetric_rank(c):
    # ax^2 + bxy + cxz + dy^2 + eyz + fz^2, coefficient order of
    # monomial_exponents(3, 2): x^2, xy, xz, y^2, yz, z^2
    a, b_, c_, d_, e_, f_ = c
    m = [[2 * a, b_, c_], [b_, 2 * d_, e_], [c_, e_, 2 * f_]]
    return rank(Matrix(m))


def _eval_ternary(coeffs, exps, p):
    v = _ZERO
    for c, e in zip(coeffs, exps):
        if c == 0:
            continue
        term = QQ(c)
        for x, k in zip(p, e):
            if k:
                term *= QQ(x) ** k
        v += term
    return v


def _sympy_poly(coeffs, exps, syms):
    expr = 0
    for c, e in zip(coeffs, exps):
        if c == 0:
            continue
        term = sympy.Rational(int(c.numerator), int(c.denominator))
        for s, k in zip(syms, e):
            if k:
                term *= s ** k
        expr += term
    return expr


def _is_reduced_and_smooth_at(coeffs, exps, syms, points):
    """Squarefree ternary form whose gradient is nonzero at the given points."""
    expr = _sympy_poly(coeffs, exps, syms)
    grads = [sympy.diff(expr, s) for s in syms]
    g = expr
    for gr in grads:
        g = sympy.gcd(g, gr)
    if not g.is_constant():
        return False
    for p in points:
        vals = [gr.subs(dict(zip(syms, p))) for gr in grads]
        if all(v == 0 for v in vals):
            return False
    return True


def _try_cubic_ci(local_pts, fidx, d):
    """Complete-intersection test for |F| = 3d points on a reduced cubic."""
    pts_f = [local_pts[i] for i in fidx]
    exps3 = monomial_exponents(3, 3)
    cub = kernel_vectors(evaluation_matrix(2, pts_f, 3))
    if not cub:
        return None
    syms = sympy.symbols("x y z")
    candidates = list(cub)
    if len(cub) > 1:
        candidates.append(tuple(sum(col) for col in zip(*cub)))
    for c in candidates:
        if not _is_reduced_and_smooth_at(c, exps3, syms, pts_f):
            continue
        # degree-d forms through F beyond the multiples of the cubic
        kerd = kernel_vectors(evaluation_matrix(2, pts_f, d))
        if len(kerd) <= comb(d - 1, 2):
            continue
        cpoly = _sympy_poly(c, exps3, syms)
        expsd = monomial_exponents(3, d)
        combos = list(kerd)
        for shift in range(1, 4):
            combos.append(tuple(sum((i + shift) * row[j] for i, row in enumerate(kerd))
                                for j in range(len(kerd[0]))))
        for gvec in combos:
            gpoly = _sympy_poly(gvec, expsd, syms)
            if gpoly == 0:
                continue
            if sympy.gcd(cpoly, gpoly).is_constant():
                return c
    return None


def detect_configuration(vm: VeroneseMap, points, d: int) -> H1Report:
    """h-values plus a witness for one of the four excess-h1 configurations.

    Inside the hypothesis range (d >= 6, |S| <= 4d-5) a witness exists
    exactly when h1 > 0, so the search only runs in that case; it proceeds
    from the most specific configuration consistent with the planted kinds:
    two-line conics, single lines, irreducible conics, cubic complete
    intersections, then general plane cubics.
    """
    if d < 6:
        raise ValueError("configuration detection needs d >= 6")
    pts = [_primitive(p) for p in points]
    _check_distinct(pts)
    if len(pts) > 4 * d - 5:
        raise ValueError(f"|S| = {len(pts)} exceeds the bound {4 * d - 5}")
    base = h_values(vm, pts, d)
    if base.h1 == 0:
        return base
    w = _search_witness(vm, pts, d)
    return H1Report(base.t, base.h0, base.h1, w)


def _search_witness(vm, pts, d):
    n = vm.n
    lines = _line_groups(pts)
    # d+1 points per line suffice for the two-line conic pattern; a single
    # line only carries excess conditions from d+2 points on
    pairable = [g for g in lines if len(g) >= d + 1]
    heavy = [g for g in lines if len(g) >= d + 2]

    # two-line conics with the side condition (d+1 points per line,
    # intersection point excluded)
    for g1, g2 in itertools.combinations(pairable, 2):
        if n > 2:
            span_pts = [pts[g1[0]], pts[g1[1]], pts[g2[0]], pts[g2[1]]]
            if _int_rank(span_pts) > 3:
                continue  # skew lines: no conic
        p = _intersection_point(pts, g1, g2)
        m1 = [i for i in g1 if p is None or pts[i] != p]
        m2 = [i for i in g2 if p is None or pts[i] != p]
        if len(m1) >= d + 1 and len(m2) >= d + 1:
            f = tuple(m1[: d + 1] + m2[: d + 1])
            locus = (tuple(pts[g1[0]]) + tuple(pts[g1[1]]),
                     tuple(pts[g2[0]]) + tuple(pts[g2[1]]))
            return Witness("conic", f, locus)

    if heavy:
        g = heavy[0]
        return Witness("line", tuple(g[: d + 1]),
                       (tuple(pts[g[0]]) + tuple(pts[g[1]]),))

    # irreducible conics inside candidate planes
    exps2 = monomial_exponents(3, 2)
    for members in _planar_groups(pts, n, 2 * d + 2):
        local = pts if n == 2 else _plane_coords(pts, members)
        base_size = len(members) - (2 * d + 2) + 5
        for seed in itertools.combinations(range(base_size), 5):
            five = [local[i] for i in seed]
            ker = kernel_vectors(evaluation_matrix(2, five, 2))
            if len(ker) != 1:
                continue
            c = ker[0]
            if _conic_symmetric_rank(c) != 3:
                continue  # non-smooth conics are covered by the line phases
            on = [i for i, p in enumerate(local) if _eval_ternary(c, exps2, p) == 0]
            if len(on) >= 2 * d + 2:
                f = tuple(members[i] for i in on[: 2 * d + 2])
                return Witness("conic", f, (tuple(c),))

    # cubic complete intersections (|F| = 3d)
    for members in _planar_groups(pts, n, 3 * d):
        local = pts if n == 2 else _plane_coords(pts, members)
        excess = len(members) - 3 * d
        for drop in itertools.combinations(range(len(members)), excess):
            fidx = [i for i in range(len(members)) if i not in drop]
            c = _try_cubic_ci(local, fidx, d)
            if c is not None:
                return Witness("cubic_ci", tuple(members[i] for i in fidx),
                               (tuple(c),))

    # plane cubics through 3d+1 points
    for members in _planar_groups(pts, n, 3 * d + 1):
        local = pts if n == 2 else _plane_coords(pts, members)
        excess = len(members) - (3 * d + 1)
        for drop in itertools.combinations(range(len(members)), excess):
            fidx = [i for i in range(len(members)) if i not in drop]
            ker = kernel_vectors(evaluation_matrix(2, [local[i] for i in fidx], 3))
            if ker:
                return Witness("cubic", tuple(members[i] for i in fidx),
                               (tuple(ker[0]),))
    return None


# ---------------------------------------------------------------------------
# mixed line-plus-points instances


@dataclass(frozen=True)
class A43Instance:
    n: int
    d: int
    b: int
    k: int
    qprime: BinaryForm       # the special point of the embedded line
    fixed_e: BinaryForm      # fixed decomposition form used for the genericity check
    u_points: tuple          # auxiliary points off the line, |U| = k-d-2+b
    mixing: tuple            # nonzero coefficients, length |U|+1
    q: tuple                 # coordinates in P^r
    seed: Optional[int] = None

    @property
    def vm(self) -> VeroneseMap:
        return VeroneseMap(self.n, self.d)


def _no_three_collinear(pts):
    return all(not _collinear(p, q, s)
               for p, q, s in itertools.combinations(pts, 3))


def _no_six_on_conic(pts, n):
    for six in itertools.combinations(pts, 6):
        if rank(evaluation_matrix(n, six, 2)) < 6:
            return False
    return True


def _restriction_conditions(vm: VeroneseMap, g_e: BinaryForm, t: int):
    """Constraint rows expressing: restriction to the line is divisible by g_e."""
    te = g_e.degree
    mult_rows = []  # basis of g_e * R_(t-te) as binary degree-t coefficient rows
    for j in range(t - te + 1):
        row = [_ZERO] * (t + 1)
        for i, c in enumerate(g_e.coeffs):
            row[i + j] += c
        mult_rows.append(row)
    cons = kernel_vectors(Matrix(mult_rows))  # te constraint rows on binary forms
    mons = monomial_exponents(vm.n + 1, t)
    out = []
    for crow in cons:
        row = []
        for e in mons:
            if all(v == 0 for v in e[2:]):
                row.append(crow[e[1]])
            else:
                row.append(_ZERO)
        out.append(row)
    return out


def _hilbert_condition_holds(vm: VeroneseMap, g_e: BinaryForm, u_points, t: int):
    """h0(ideal of E u U at t) == max(0, h0(ideal of E at t) - |U|), exactly."""
    nmons = comb(vm.n + t, vm.n)
    e_rows = _restriction_conditions(vm, g_e, t)
    h0_e = nmons - rank(Matrix(e_rows))
    rows = e_rows + [list(r) for r in
                     evaluation_matrix(vm.n, u_points, t).entries]
    h0_a = nmons - rank(Matrix(rows))
    return h0_a == max(0, h0_e - len(u_points))


def a43_construct(n: int, d: int, b: int, k: int, seed=0, bound: int = 50,
                  max_retries: int = 200) -> A43Instance:
    if n < 2:
        raise ValueError("need n >= 2")
    if d < 8:
        raise ValueError("need d >= 8")
    if not 4 <= 2 * b <= d:
        raise ValueError("need 4 <= 2b <= d")
    if not d + 2 - b <= k <= 2 * d - 2:
        raise ValueError("need d+2-b <= k <= 2d-2")
    usize = k - d - 2 + b
    if usize < 1:
        raise ValueError("the empty-U boundary is reduced away; need k >= d+3-b")
    rng = _rng(seed)
    echo_seed = seed if isinstance(seed, int) else None
    vm = VeroneseMap(n, d)
    qprime = generate_with_profile(d, b, rng, bound)
    profile = rank_profile(qprime)
    fixed_e = None
    for _ in range(max_retries):
        s = sample_decomposition(qprime, d + 2 - b, rng, bound, profile)
        if s is not None and s.irredundant:
            fixed_e = s.g
            break
    if fixed_e is None:
        raise FamilyExhausted("no decomposition of the line point found")

    for _ in range(max_retries):
        u = []
        seen = set()
        while len(u) < usize:
            p = tuple(rng.randint(-bound, bound) for _ in range(n + 1))
            if all(c == 0 for c in p[2:]):
                continue  # on (or projecting into) the coordinate line
            key = _primitive(p)
            if key in seen:
                continue
            seen.add(key)
            u.append(key)
        if len(u) >= 3 and not _no_three_collinear(u):
            continue
        if len(u) >= 6 and not _no_six_on_conic(u, n):
            continue
        if not _hilbert_condition_holds(vm, fixed_e, u, d):
            continue
        rows = [vm.line_embed(qprime.coeffs)] + [vm.embed(p) for p in u]
        if rank(Matrix([list(r) for r in rows])) != usize + 1:
            continue
        mixing = tuple(rng.choice([-1, 1]) * rng.randint(1, bound)
                       for _ in range(usize + 1))
        q = tuple(sum(m * row[j] for m, row in zip(mixing, rows))
                  for j in range(vm.r + 1))
        # exact irredundancy: q outside the span of every proper subset
        ok = True
        for omit in range(usize + 1):
            sub = LinearSubspace(vm.r + 1,
                                 [list(r) for i, r in enumerate(rows) if i != omit])
            if sub.contains(q):
                ok = False
                break
        if ok:
            return A43Instance(n, d, b, k, qprime, fixed_e, tuple(u), mixing, q,
                               echo_seed)
    raise FamilyExhausted("could not draw a general U")


@dataclass(frozen=True)
class A43Report:
    samples_used: int
    all_sample_spans_contain_q: bool
    intersection: LinearSubspace
    intersection_equals_target: bool
    intersection_proj_dim: int
    expected_proj_dim: int
    qprime_recovered: bool
    u_span_contained: bool
    part2_in_hypothesis: bool     # k <= 2d-3; for k = 2d-2 containment only
    rank_upper_bound: int
    rank_lower_bound_certified: bool = False
    note: str = ("the decomposition-size lower bound and the full family "
                 "characterization are not certified at desk scale; this is "
                 "an upper-bound and consistency report")

    @property
    def passed(self) -> bool:
        if not self.all_sample_spans_contain_q:
            return False
        if not self.part2_in_hypothesis:
            return True
        return (self.intersection_equals_target
                and self.intersection_proj_dim == self.expected_proj_dim
                and self.qprime_recovered
                and self.u_span_contained)


def a43_verify(inst: A43Instance, n_samples: int = 12, seed=0,
               bound: int = 50) -> A43Report:
    rng = _rng(seed)
    vm = inst.vm
    d, b = inst.d, inst.b
    t_e = d + 2 - b
    profile = rank_profile(inst.qprime)
    u_rows = [vm.embed(p) for p in inst.u_points]
    qprime_vec = vm.line_embed(inst.qprime.coeffs)
    target = LinearSubspace(vm.r + 1, [list(qprime_vec)] + [list(r) for r in u_rows])

    contain_all = True
    spans = []
    draws = 0
    while len(spans) < n_samples and draws < 40 * n_samples:
        draws += 1
        s = sample_decomposition(inst.qprime, t_e, rng, bound, profile)
        if s is None or not s.irredundant:
            continue
        rows = [list(vm.line_embed(row)) for row in s.span.basis]
        rows += [list(r) for r in u_rows]
        sub = LinearSubspace(vm.r + 1, rows)
        if not sub.contains(inst.q):
            contain_all = False
        spans.append(sub)
    if not spans:
        raise FamilyExhausted("no decomposition samples of the line point")

    inter = spans[0]
    for s in spans[1:]:
        inter = inter.intersect(s)
    yspan = vm.line_span()
    recovered = inter.intersect(yspan)
    qprime_ok = (recovered.dim == 0
                 and recovered == LinearSubspace.point(qprime_vec))
    u_ok = all(inter.contains(r) for r in u_rows)
    return A43Report(
        samples_used=len(spans),
        all_sample_spans_contain_q=contain_all,
        intersection=inter,
        intersection_equals_target=(inter == target),
        intersection_proj_dim=inter.dim,
        expected_proj_dim=len(inst.u_points),
        qprime_recovered=qprime_ok,
        u_span_contained=u_ok,
        part2_in_hypothesis=(inst.k <= 2 * d - 3),
        rank_upper_bound=inst.k,
    )
