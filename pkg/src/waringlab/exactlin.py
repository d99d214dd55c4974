"""Exact rational matrices and projective linear subspaces.

Everything downstream (apolarity, span intersections, Hilbert functions)
reduces to row reduction over Q done here.  All arithmetic is exact; there
is no floating point anywhere in the package.  Row reduction uses a fixed
deterministic pivot rule (leftmost pivot column, first nonzero row) so
canonical bases are reproducible across runs.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

try:
    from gmpy2 import mpq as _mpq

    def QQ(a, b=None):
        return _mpq(a) if b is None else _mpq(a, b)
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    QQ = Fraction

_ZERO = QQ(0)
_ONE = QQ(1)


def qstr(x) -> str:
    """Serialize a rational as ``p`` or ``p/q`` (exact round-trip)."""
    return str(x)


def parse_rational(s: str):
    s = s.strip()
    if "/" in s:
        num, den = s.split("/")
        return QQ(int(num), int(den))
    return QQ(int(s))


class Matrix:
    """Immutable dense matrix over exact rationals."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        rows = tuple(tuple(QQ(e) for e in row) for row in entries)
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")
        self.entries = rows

    @classmethod
    def zero(cls, rows, cols):
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"Matrix({[list(r) for r in self.entries]})"

    def row(self, i):
        return self.entries[i]

    def transpose(self):
        return Matrix(list(zip(*self.entries))) if self.rows else Matrix([])

    def stack(self, other):
        if other.rows and self.rows and other.cols != self.cols:
            raise ValueError("column count mismatch")
        return Matrix(list(self.entries) + list(other.entries))

    def matmul(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ot = list(zip(*other.entries))
        return Matrix(
            [[sum((a * b for a, b in zip(row, col)), _ZERO) for col in ot]
             for row in self.entries]
        )

    def mul_vec(self, v):
        if len(v) != self.cols:
            raise ValueError("length mismatch")
        return tuple(sum((a * b for a, b in zip(row, v)), _ZERO) for row in self.entries)

    def is_zero(self):
        return all(e == 0 for row in self.entries for e in row)


def _rref_rows(rows, ncols):
    """In-place style rref on a list of list-rows; returns (rows, pivot_cols)."""
    rows = [list(r) for r in rows]
    nrows = len(rows)
    pivots = []
    pr = 0
    for pc in range(ncols):
        sel = None
        for i in range(pr, nrows):
            if rows[i][pc] != 0:
                sel = i
                break
        if sel is None:
            continue
        rows[pr], rows[sel] = rows[sel], rows[pr]
        inv = _ONE / rows[pr][pc]
        rows[pr] = [e * inv for e in rows[pr]]
        for i in range(nrows):
            if i != pr and rows[i][pc] != 0:
                f = rows[i][pc]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[pr])]
        pivots.append(pc)
        pr += 1
        if pr == nrows:
            break
    return rows, pivots


def rref(m: Matrix) -> Matrix:
    """Reduced row-echelon form (leftmost pivot, first nonzero row)."""
    rows, _ = _rref_rows(m.entries, m.cols)
    return Matrix(rows)


def rref_with_transform(m: Matrix):
    """Return (R, E) with R = rref(m) and E invertible such that E*m = R."""
    aug = [list(r) + [1 if i == j else 0 for j in range(m.rows)]
           for i, r in enumerate(m.entries)]
    rows, _ = _rref_rows(aug, m.cols)  # pivots only searched in first m.cols
    r = Matrix([row[: m.cols] for row in rows])
    e = Matrix([row[m.cols:] for row in rows])
    return r, e


def rank(m: Matrix) -> int:
    _, pivots = _rref_rows(m.entries, m.cols)
    return len(pivots)


def kernel_vectors(m: Matrix):
    """Basis rows of the right null space of m."""
    rows, pivots = _rref_rows(m.entries, m.cols)
    ncols = m.cols
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for fc in free:
        v = [_ZERO] * ncols
        v[fc] = _ONE
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        basis.append(tuple(v))
    return basis


def _primitive_int_row(row):
    """Scale a rational row to coprime integers with positive leading entry."""
    dens = [int(e.denominator) for e in row]
    l = 1
    for d in dens:
        l = l * d // gcd(l, d)
    ints = [int(e * l) for e in row]
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
    return tuple(QQ(v) for v in ints)


class LinearSubspace:
    """Projective linear subspace of P^N given by a canonical basis matrix.

    The canonical form is the rref of any spanning set with each row scaled
    to coprime integers (positive leading entry), so equal row spaces compare
    equal as tuples.  Zero rows represent the empty subspace.
    """

    __slots__ = ("ncoords", "basis")

    def __init__(self, ncoords, rows):
        if ncoords < 1:
            raise ValueError("need at least one coordinate")
        red, _ = _rref_rows(rows, ncoords)
        red = [r for r in red if any(e != 0 for e in r)]
        self.ncoords = ncoords
        self.basis = tuple(_primitive_int_row(r) for r in red)

    @classmethod
    def span_of(cls, vectors, ncoords):
        return cls(ncoords, list(vectors))

    @classmethod
    def empty(cls, ncoords):
        return cls(ncoords, [])

    @classmethod
    def full(cls, ncoords):
        return cls(ncoords, Matrix.identity(ncoords).entries)

    @classmethod
    def point(cls, v):
        if all(e == 0 for e in v):
            raise ValueError("zero vector is not a projective point")
        return cls(len(v), [list(v)])

    @property
    def ambient_dim(self):
        return self.ncoords - 1

    @property
    def dim(self):
        """Projective dimension (-1 for the empty subspace)."""
        return len(self.basis) - 1

    @property
    def affine_dim(self):
        return len(self.basis)

    def matrix(self) -> Matrix:
        return Matrix(self.basis) if self.basis else Matrix.zero(0, self.ncoords)

    def contains(self, v) -> bool:
        if len(v) != self.ncoords:
            raise ValueError("ambient dimension mismatch")
        v = [QQ(e) for e in v]
        if all(e == 0 for e in v):
            raise ValueError("zero vector is not a projective point")
        # reduce v against the canonical (rref-like) basis
        v = list(v)
        for row in self.basis:
            lead = next(j for j, e in enumerate(row) if e != 0)
            if v[lead] != 0:
                f = v[lead] / row[lead]
                v = [a - f * b for a, b in zip(v, row)]
        return all(e == 0 for e in v)

    def constraints(self):
        """Rows spanning the orthogonal complement (linear forms cutting self out)."""
        if not self.basis:
            return [tuple(_ONE if j == i else _ZERO for j in range(self.ncoords))
                    for i in range(self.ncoords)]
        return kernel_vectors(Matrix(self.basis))

    def intersect(self, other: "LinearSubspace") -> "LinearSubspace":
        if self.ncoords != other.ncoords:
            raise ValueError("ambient dimension mismatch")
        cons = list(self.constraints()) + list(other.constraints())
        if not cons:
            return LinearSubspace.full(self.ncoords)
        return kernel(Matrix(cons))

    def plus(self, other: "LinearSubspace") -> "LinearSubspace":
        if self.ncoords != other.ncoords:
            raise ValueError("ambient dimension mismatch")
        return LinearSubspace(self.ncoords, list(self.basis) + list(other.basis))

    def __eq__(self, other):
        return (isinstance(other, LinearSubspace)
                and self.ncoords == other.ncoords
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ncoords, self.basis))

    def __repr__(self):
        return f"LinearSubspace(P^{self.ambient_dim}, dim={self.dim})"


def kernel(m: Matrix) -> LinearSubspace:
    """Right null space of m as a subspace of P^(cols-1)."""
    return LinearSubspace(m.cols, kernel_vectors(m))


def intersect_all(spaces):
    """Intersection of several subspaces, folded through stacked constraints."""
    spaces = list(spaces)
    if not spaces:
        raise ValueError("empty intersection")
    n = spaces[0].ncoords
    cons = []
    for s in spaces:
        if s.ncoords != n:
            raise ValueError("ambient dimension mismatch")
        cons.extend(s.constraints())
    if not cons:
        return LinearSubspace.full(n)
    return kernel(Matrix(cons))


def det(m: Matrix):
    """Determinant by fraction-free style elimination over Q."""
    if m.rows != m.cols:
        raise ValueError("determinant of non-square matrix")
    n = m.rows
    a = [list(r) for r in m.entries]
    sign = 1
    d = _ONE
    for c in range(n):
        piv = None
        for i in range(c, n):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            return _ZERO
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        d = d * a[c][c]
        inv = _ONE / a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d if sign == 1 else -d
