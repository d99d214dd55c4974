"""Ranks, decomposition families, and non-uniqueness sets on the rational
normal curve.

A point q of P^d is a degree-d binary form F.  Its border rank b is the
first degree where the apolar ideal is nonzero; the rank is b when that
slice contains a squarefree element (decided by a deterministic pencil
discriminant certificate, never by root extraction) and d+2-b otherwise.
Decomposition point sets are sampled as squarefree apolar forms; their
spans are kernels of contraction maps, and non-uniqueness sets are folded
span intersections with a stabilization rule.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import ceil
from typing import Optional

from .binform import (
    BinaryForm,
    DualForm,
    apolar_slice,
    contract,
    monomial,
    spans_redundantly,
    squarefree,
)
from .exactlin import QQ, LinearSubspace, Matrix, kernel

DEFAULT_COEFF_BOUND = 50


class FamilyExhausted(Exception):
    """No usable decomposition sample was found within the draw budget."""


def _rng(seed_or_rng) -> random.Random:
    if isinstance(seed_or_rng, random.Random):
        return seed_or_rng
    return random.Random(seed_or_rng)


def _random_combination(basis, rng, bound=DEFAULT_COEFF_BOUND):
    """Nonzero integer combination of a slice basis."""
    while True:
        coeffs = [rng.randint(-bound, bound) for _ in basis]
        if any(c != 0 for c in coeffs):
            break
    g = BinaryForm(basis[0].degree, [0] * (basis[0].degree + 1))
    for c, b in zip(coeffs, basis):
        if c != 0:
            g = g.add(b.scale(c))
    return g


def squarefree_slice_element(basis) -> Optional[DualForm]:
    """Deterministic squarefree member of a 1- or 2-dim slice, or None.

    The discriminant restricted to a pencil is a form of degree at most
    2t-2 in the pencil parameter, so testing 2t-1 distinct members either
    finds a squarefree one or certifies the discriminant vanishes on the
    whole pencil (no squarefree member exists).
    """
    if len(basis) == 1:
        return basis[0] if squarefree(basis[0]) else None
    if len(basis) != 2:
        raise ValueError("pencil certificate needs a 1- or 2-dim slice")
    g0, g1 = basis
    t = g0.degree
    candidates = [g1] + [g0.add(g1.scale(i)) for i in range(2 * t - 2)]
    for g in candidates:
        if squarefree(g):
            return g
    return None


@dataclass(frozen=True)
class RankProfile:
    d: int
    border_rank: int
    cactus_rank: int
    rank: int
    min_generator: DualForm
    z_unique: bool


def rank_profile(f: BinaryForm) -> RankProfile:
    """Border/cactus rank, rank, and a minimal apolar generator for f."""
    if f.is_zero():
        raise ValueError("zero form is not a projective point")
    d = f.degree
    if d == 0:
        return RankProfile(0, 1, 1, 1, monomial(1, 1), True)
    b = None
    for t in range(1, d + 2):
        sl = apolar_slice(f, t)
        if sl.affine_dim > 0:
            b = t
            break
    basis = list(sl.basis)
    z_unique = len(basis) == 1
    sf = squarefree_slice_element(basis) if len(basis) <= 2 else None
    if sf is not None:
        rank = b
        gen = basis[0] if z_unique else sf
    else:
        rank = d + 2 - b
        gen = basis[0]
    return RankProfile(d, b, b, rank, gen, z_unique)


def span_of_apolar_form(g: DualForm, d: int) -> LinearSubspace:
    """Span in P^d of the curve points cut out by a squarefree g of degree <= d.

    Computed as the kernel of F' -> contract(g, F') on degree-d forms; this
    equals the span of the Veronese images of the roots of g without ever
    extracting a root.
    """
    cols = [contract(g, monomial(d, i)).coeffs for i in range(d + 1)]
    rows = [[col[m] for col in cols] for m in range(d - g.degree + 1)]
    return kernel(Matrix(rows))


@dataclass(frozen=True)
class DecompositionSample:
    t: int
    g: DualForm
    span: LinearSubspace
    irredundant: bool


def sample_decomposition(
    f: BinaryForm,
    t: int,
    rng,
    bound: int = DEFAULT_COEFF_BOUND,
    profile: Optional[RankProfile] = None,
    allow_on_curve: bool = False,
) -> Optional[DecompositionSample]:
    """One pseudo-random size-t decomposition draw, or None if it came out
    non-squarefree (caller retries)."""
    rng = _rng(rng)
    d = f.degree
    profile = profile or rank_profile(f)
    if t < profile.rank:
        raise ValueError(f"no size-{t} decomposition exists: rank is {profile.rank}")
    if t > d:
        raise ValueError("sample degree exceeds ambient degree")
    if profile.rank == 1 and t > 1 and not allow_on_curve:
        raise ValueError("point lies on the curve; size-t sets only via the "
                         "sized-family interface")
    basis = list(apolar_slice(f, t).basis)
    g = basis[0] if len(basis) == 1 else _random_combination(basis, rng, bound)
    if not squarefree(g):
        return None
    span = span_of_apolar_form(g, d)
    irred = not spans_redundantly(g, f)
    return DecompositionSample(t, g, span, irred)


@dataclass(frozen=True)
class WqResult:
    subspace: LinearSubspace
    samples_used: int
    stabilized: bool
    certified_point: bool
    samples: tuple = field(default=())
    exhausted: bool = False
    seed: Optional[int] = None


def non_uniqueness_set(
    f: BinaryForm,
    t: Optional[int] = None,
    max_samples: Optional[int] = None,
    seed=0,
    bound: int = DEFAULT_COEFF_BOUND,
    allow_on_curve: bool = False,
) -> WqResult:
    """Fold span intersections over irredundant size-t samples.

    One-sided by construction: the result always contains the true
    non-uniqueness set; certified_point means the fold collapsed to the
    single point f, which proves equality.
    """
    rng = _rng(seed)
    echo_seed = seed if isinstance(seed, int) else None
    d = f.degree
    profile = rank_profile(f)
    b = profile.border_rank
    point = LinearSubspace.point(f.coeffs)
    if profile.rank == 1 and (t is None or t == 1):
        return WqResult(point, 0, True, True, (), False, echo_seed)
    if t is None:
        t = profile.rank
    if max_samples is None:
        max_samples = (ceil(d / (b - 1)) if b > 1 else d) + 10
    single_member = apolar_slice(f, t).affine_dim == 1

    current: Optional[LinearSubspace] = None
    used = []
    unchanged = 0
    draws = 0
    while draws < max_samples:
        draws += 1
        s = sample_decomposition(f, t, rng, bound, profile, allow_on_curve=allow_on_curve)
        if s is None or not s.irredundant:
            if single_member:
                break
            continue
        if current is None:
            current = s.span
            used.append(s)
        else:
            nxt = current.intersect(s.span)
            if nxt == current:
                unchanged += 1
            else:
                unchanged = 0
                used.append(s)
            current = nxt
        if single_member:
            break
        if unchanged >= 3 or current == point:
            break
    if current is None:
        return WqResult(LinearSubspace.full(d + 1), 0, False, False, (), True, echo_seed)
    stabilized = unchanged >= 3 or current == point or single_member
    return WqResult(current, len(used), stabilized, current == point,
                    tuple(used), False, echo_seed)


def cactus_span_intersection(f: BinaryForm, seed=0) -> LinearSubspace:
    """Intersect the cactus-scheme span with one sampled decomposition span."""
    rng = _rng(seed)
    profile = rank_profile(f)
    if profile.rank <= profile.border_rank:
        raise ValueError("rank equals cactus rank; no strict cactus scheme case")
    zspan = span_of_apolar_form(profile.min_generator, f.degree)
    for _ in range(200):
        s = sample_decomposition(f, profile.rank, rng, profile=profile)
        if s is not None and s.irredundant:
            return zspan.intersect(s.span)
    raise FamilyExhausted("no squarefree irredundant decomposition found")


def family_dimension(f: BinaryForm) -> int:
    """Projective dimension of the rank-decomposition family (rank > b case)."""
    profile = rank_profile(f)
    b = profile.border_rank
    if profile.rank != f.degree + 2 - b or profile.rank <= b:
        raise ValueError("family dimension formula needs rank = d+2-b > b")
    return apolar_slice(f, profile.rank).affine_dim - 1


def wprime_check(f: BinaryForm, wq: WqResult, seed=0,
                 bound: int = DEFAULT_COEFF_BOUND) -> bool:
    """Sampled points of the non-uniqueness set share the rank of f.

    Draws o in the folded subspace avoiding the proper-subset hyperplanes of
    one fixed sample (division-family membership test), then checks the rank
    equality and membership in every recorded sample span.
    """
    if not wq.stabilized:
        raise ValueError("wprime check needs a stabilized result")
    if wq.subspace.dim <= 0:
        return True
    rng = _rng(seed)
    fixed = wq.samples[0]
    target_rank = rank_profile(f).rank
    for _ in range(200):
        coeffs = [rng.randint(-bound, bound) for _ in wq.subspace.basis]
        if not any(coeffs):
            continue
        v = [sum(c * row[j] for c, row in zip(coeffs, wq.subspace.basis))
             for j in range(wq.subspace.ncoords)]
        if not any(v):
            continue
        o = BinaryForm(f.degree, v)
        if spans_redundantly(fixed.g, o):
            continue  # o sits on a proper-subset hyperplane; redraw
        if rank_profile(o).rank != target_rank:
            return False
        return all(s.span.contains(v) for s in wq.samples)
    raise FamilyExhausted("no generic point of the subspace found")


def top_size_sample(f: BinaryForm, seed=0, attempts: int = 200,
                    bound: int = DEFAULT_COEFF_BOUND) -> Optional[DecompositionSample]:
    """An irredundant size-d decomposition through f (top of the size range)."""
    rng = _rng(seed)
    for _ in range(attempts):
        s = sample_decomposition(f, f.degree, rng, bound, allow_on_curve=True)
        if s is not None and s.irredundant:
            return s
    return None


def top_size_check(f: BinaryForm, seed=0) -> bool:
    return top_size_sample(f, seed) is not None


def generate_with_profile(d: int, b: int, seed=0,
                          bound: int = DEFAULT_COEFF_BOUND) -> BinaryForm:
    """Random form with border rank b and rank d+2-b (rank > border case).

    Builds g0 = Y^2 * prod(X - a_i Y) with distinct a_i, draws f from the
    kernel of contraction by g0, and keeps only draws whose verified profile
    matches; the generator is never trusted.
    """
    if not (2 <= b and 2 * b < d + 2 and b <= d):
        raise ValueError("profile out of range")
    rng = _rng(seed)
    for _ in range(1000):
        alphas = []
        while len(alphas) < b - 2:
            a = rng.randint(-bound, bound)
            if a not in alphas:
                alphas.append(a)
        g0 = BinaryForm(2, [0, 0, 1])  # Y^2
        for a in alphas:
            g0 = g0.mul(BinaryForm(1, [1, -a]))  # X - a*Y
        ker = span_of_apolar_form(g0, d)
        coeffs = [rng.randint(-bound, bound) for _ in ker.basis]
        if not any(coeffs):
            continue
        v = [sum(c * row[j] for c, row in zip(coeffs, ker.basis))
             for j in range(d + 1)]
        if not any(v):
            continue
        f = BinaryForm(d, v)
        p = rank_profile(f)
        if p.border_rank == b and p.rank == d + 2 - b:
            return f
    raise FamilyExhausted(f"could not generate a profile ({b}, {d + 2 - b}) form")


def generate_generic(d: int, seed=0, bound: int = DEFAULT_COEFF_BOUND) -> BinaryForm:
    """Random form with the generic profile (border rank = rank = floor(d/2)+1)."""
    rng = _rng(seed)
    g = d // 2 + 1
    for _ in range(1000):
        f = BinaryForm(d, [rng.randint(-bound, bound) for _ in range(d + 1)])
        if f.is_zero():
            continue
        p = rank_profile(f)
        if p.border_rank == g and p.rank == g:
            return f
    raise FamilyExhausted("could not draw a generic form")
