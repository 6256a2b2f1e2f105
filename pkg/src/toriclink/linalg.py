"""Exact integer and rational linear algebra.

Everything here works on Python ``int`` and :class:`fractions.Fraction`;
there is no floating point anywhere.  Integer lattices are passed around as
plain lists of integer rows, rational operators as :class:`Matrix`.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

Number = int | Fraction


def _norm(x) -> Number:
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, int):
        return x
    raise TypeError(f"exact number expected, got {type(x).__name__}")


class Matrix:
    """Immutable sparse matrix with exact rational entries.

    Rows are stored as ``{col: value}`` dictionaries holding only nonzero
    entries, so 0 x n and n x 0 shapes are representable.
    """

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, nrows: int, ncols: int, rows: Sequence[dict[int, Number]] | None = None):
        if nrows < 0 or ncols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [{} for _ in range(nrows)]
        if len(rows) != nrows:
            raise ValueError("row count does not match nrows")
        clean = []
        for row in rows:
            r = {}
            for j, v in row.items():
                if not 0 <= j < ncols:
                    raise IndexError(f"column {j} out of range for {ncols} columns")
                v = _norm(v)
                if v:
                    r[j] = v
            clean.append(r)
        self._rows = tuple(clean)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], ncols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix without rows")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, [{j: v for j, v in enumerate(r) if v} for r in rows])

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: dict[tuple[int, int], Number]) -> "Matrix":
        rows: list[dict[int, Number]] = [{} for _ in range(nrows)]
        for (i, j), v in entries.items():
            rows[i][j] = v
        return cls(nrows, ncols, rows)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [{i: 1} for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def row(self, i: int) -> dict[int, Number]:
        return dict(self._rows[i])

    def __getitem__(self, idx: tuple[int, int]) -> Number:
        i, j = idx
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(idx)
        return self._rows[i].get(j, 0)

    def tolist(self) -> list[list[Number]]:
        return [[r.get(j, 0) for j in range(self.ncols)] for r in self._rows]

    @property
    def T(self) -> "Matrix":
        cols: list[dict[int, Number]] = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self._rows):
            for j, v in r.items():
                cols[j][i] = v
        return Matrix(self.ncols, self.nrows, cols)

    def nnz(self) -> int:
        return sum(len(r) for r in self._rows)

    def is_zero(self) -> bool:
        return not any(self._rows)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        orows = other._rows
        for r in self._rows:
            acc: dict[int, Number] = {}
            for k, a in r.items():
                for j, b in orows[k].items():
                    acc[j] = acc.get(j, 0) + a * b
            out.append(acc)
        return Matrix(self.nrows, other.ncols, out)

    def apply(self, vec: Sequence[Number]) -> list[Number]:
        if len(vec) != self.ncols:
            raise ValueError("vector length does not match ncols")
        return [_norm(sum((v * vec[j] for j, v in r.items()), 0)) for r in self._rows]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.shape, tuple(tuple(sorted(r.items())) for r in self._rows)))

    def __repr__(self) -> str:
        return f"Matrix({self.nrows}x{self.ncols}, {self.tolist()})"


def as_matrix(m) -> Matrix:
    if isinstance(m, Matrix):
        return m
    rows = [list(r) for r in m]
    if not rows:
        return Matrix(0, 0)
    return Matrix.from_rows(rows)


def _integer_rows(m: Matrix) -> list[dict[int, int]]:
    """Clear denominators row by row (row scaling does not change rank)."""
    out = []
    for i in range(m.nrows):
        r = m.row(i)
        if not r:
            continue
        den = 1
        for v in r.values():
            if isinstance(v, Fraction):
                den = den * v.denominator // gcd(den, v.denominator)
        out.append({j: int(v * den) for j, v in r.items()})
    return out


def _primitive_row(r: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in r.values():
        g = gcd(g, v)
        if g == 1:
            return r
    return {j: v // g for j, v in r.items()}


def rank(m) -> int:
    """Rank over Q by fraction-free sparse elimination.

    Pivots are chosen from the shortest remaining row, on its entry of
    smallest magnitude; eliminated rows are divided by their content so
    entries stay small.
    """
    m = as_matrix(m)
    rows = [_primitive_row(r) for r in _integer_rows(m)]
    r = 0
    while rows:
        pi = min(range(len(rows)), key=lambda i: len(rows[i]))
        prow = rows.pop(pi)
        pc = min(prow, key=lambda j: (abs(prow[j]), j))
        p = prow[pc]
        r += 1
        nxt = []
        for row in rows:
            a = row.get(pc)
            if a is None:
                nxt.append(row)
                continue
            g = gcd(a, p)
            sp, sa = p // g, a // g
            new = {j: v * sp for j, v in row.items()}
            for j, v in prow.items():
                w = new.get(j, 0) - sa * v
                if w:
                    new[j] = w
                else:
                    new.pop(j, None)
            if new:
                nxt.append(_primitive_row(new))
        rows = nxt
    return r


def rref(m) -> tuple[list[list[Number]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    m = as_matrix(m)
    a = [[Fraction(x) for x in row] for row in m.tolist()]
    ncols = m.ncols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return [[_norm(x) for x in row] for row in a[:r]], pivots


def kernel_basis(m) -> list[tuple[Number, ...]]:
    """Basis of the right kernel {v : m v = 0} over Q."""
    m = as_matrix(m)
    red, pivots = rref(m)
    free = [c for c in range(m.ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v: list[Number] = [0] * m.ncols
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = _norm(-row[f])
        basis.append(tuple(v))
    return basis


def solve(a, b: Sequence[Number]) -> tuple[Number, ...] | None:
    """One exact solution x of a x = b, or None when inconsistent."""
    a = as_matrix(a)
    if len(b) != a.nrows:
        raise ValueError("right-hand side length does not match rows")
    aug = Matrix.from_rows([row + [bi] for row, bi in zip(a.tolist(), b)], a.ncols + 1)
    red, pivots = rref(aug)
    if a.ncols in pivots:
        return None
    x: list[Number] = [0] * a.ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[a.ncols]
    return tuple(x)


def solve_matrix(a, b) -> Matrix:
    """Exact X with a X = b (one solution per column); raises if inconsistent."""
    a, b = as_matrix(a), as_matrix(b)
    if a.nrows != b.nrows:
        raise ValueError("row mismatch")
    cols = []
    bl = b.tolist()
    for j in range(b.ncols):
        x = solve(a, [row[j] for row in bl])
        if x is None:
            raise ValueError("inconsistent linear system")
        cols.append(x)
    if not cols:
        return Matrix(a.ncols, 0)
    return Matrix.from_rows(cols, a.ncols).T


def det(rows: Sequence[Sequence[Number]]) -> Number:
    """Determinant by Bareiss elimination (exact for ints and Fractions)."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    sign = 1
    prev: Number = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if p is None:
                return 0
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num // prev if isinstance(num, int) and isinstance(prev, int) else num / prev
        prev = a[k][k]
    return _norm(sign * a[n - 1][n - 1])


# ---------------------------------------------------------------------------
# integer lattices

def primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(x // g for x in v)


def hermite_normal_form(m: Sequence[Sequence[int]], ncols: int | None = None):
    """Row-style Hermite normal form.

    Returns ``(h, u)`` with ``u`` unimodular and ``u @ m == h``.  Pivots of
    ``h`` are positive and entries above each pivot lie in ``[0, pivot)``.
    """
    a = [list(map(int, r)) for r in m]
    nrows = len(a)
    if ncols is None:
        ncols = len(a[0]) if a else 0
    u = [[int(i == j) for j in range(nrows)] for i in range(nrows)]

    def sub(i, k, q):
        a[i] = [x - q * y for x, y in zip(a[i], a[k])]
        u[i] = [x - q * y for x, y in zip(u[i], u[k])]

    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        while True:
            nz = [i for i in range(r, nrows) if a[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[p] = a[p], a[r]
            u[r], u[p] = u[p], u[r]
            clean = True
            for i in range(r + 1, nrows):
                if a[i][c]:
                    sub(i, r, a[i][c] // a[r][c])
                    if a[i][c]:
                        clean = False
            if clean:
                break
        if not any(a[i][c] for i in range(r, nrows)):
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                sub(i, r, q)
        r += 1
    return a, u


def integer_kernel(m: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    """Z-basis of {x in Z^ncols : m x = 0}, in Hermite normal form."""
    rows = [list(r) for r in m]
    if not rows or not any(any(r) for r in rows):
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    mt = [[rows[i][j] for i in range(len(rows))] for j in range(ncols)]
    h, u = hermite_normal_form(mt, len(rows))
    basis = [u[i] for i in range(ncols) if not any(h[i])]
    if not basis:
        return []
    hb, _ = hermite_normal_form(basis, ncols)
    return [tuple(r) for r in hb if any(r)]


def lattice_basis(gens: Sequence[Sequence[int]], n: int) -> list[tuple[int, ...]]:
    """Canonical (HNF) basis of the lattice generated by ``gens``."""
    if not gens:
        return []
    h, _ = hermite_normal_form(gens, n)
    return [tuple(r) for r in h if any(r)]


def saturate(gens: Sequence[Sequence[int]], n: int | None = None) -> list[tuple[int, ...]]:
    """Z-basis of span_Q(gens) ∩ Z^n, in Hermite normal form."""
    gens = [tuple(g) for g in gens]
    if n is None:
        if not gens:
            raise ValueError("ambient rank needed for an empty generating set")
        n = len(gens[0])
    if any(len(g) != n for g in gens):
        raise ValueError("generators of unequal length")
    if not any(any(g) for g in gens):
        return []
    annihilator = integer_kernel(gens, n)
    return integer_kernel(annihilator, n) if annihilator else [
        tuple(int(i == j) for j in range(n)) for i in range(n)
    ]


def quotient_projection(n: int, s: Sequence[Sequence[int]]) -> Matrix:
    """Surjection Z^n -> Z^(n-k) whose kernel is exactly the lattice of ``s``.

    The rows are the HNF basis of the annihilator of ``s``, which fixes the
    quotient coordinates deterministically.
    """
    s = [tuple(v) for v in s if any(v)]
    if any(len(v) != n for v in s):
        raise ValueError("sublattice vectors must have length n")
    basis = lattice_basis(s, n)
    if len(basis) > n:
        raise ValueError("sublattice rank exceeds ambient rank")
    if s and basis != saturate(s, n):
        raise ValueError("sublattice is not saturated")
    rows = integer_kernel(s, n)
    if not rows:
        return Matrix(0, n)
    return Matrix.from_rows(rows, n)


def cross_normal(rows: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Generalized cross product of r-1 vectors in Z^r (zero if dependent)."""
    r = len(rows) + 1
    out = []
    for i in range(r):
        minor = [[row[j] for j in range(r) if j != i] for row in rows]
        d = det(minor)
        out.append(d if i % 2 == 0 else -d)
    return tuple(int(x) for x in out)


# ---------------------------------------------------------------------------
# exact linear programming (phase-one simplex)

def nonneg_solution(a: Sequence[Sequence[Number]], b: Sequence[Number]) -> tuple[Number, ...] | None:
    """Find x >= 0 with a x = b exactly, or None if infeasible.

    Phase-one simplex with Bland's rule on Fractions.  Sizes here are a
    handful of rows and a few dozen columns.
    """
    m = len(a)
    nvar = len(a[0]) if m else 0
    if m == 0:
        return tuple([0] * nvar)
    tab = []
    for i in range(m):
        row = [Fraction(x) for x in a[i]] + [Fraction(0)] * m + [Fraction(b[i])]
        if row[-1] < 0:
            row = [-x for x in row]
        row[nvar + i] = Fraction(1)
        tab.append(row)
    basis = [nvar + i for i in range(m)]
    width = nvar + m
    # reduced cost row for min sum(artificials)
    cost = [Fraction(0)] * (width + 1)
    for row in tab:
        for j in range(width + 1):
            cost[j] -= row[j]
    for i in range(m):
        cost[nvar + i] += 1
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i, row in enumerate(tab):
            if row[enter] > 0:
                ratio = row[-1] / row[enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:  # unbounded cannot happen in phase one
            raise RuntimeError("phase-one simplex unbounded")
        pi = best[1]
        prow = tab[pi]
        piv = prow[enter]
        prow = [x / piv for x in prow]
        tab[pi] = prow
        for i in range(m):
            if i != pi and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], prow)]
        if cost[enter] != 0:
            f = cost[enter]
            cost = [x - f * y for x, y in zip(cost, prow)]
        basis[pi] = enter
    if cost[-1] != 0:
        return None
    x: list[Number] = [0] * nvar
    for i, j in enumerate(basis):
        if j < nvar:
            x[j] = _norm(tab[i][-1])
    return tuple(x)


def is_pointed(vectors: Iterable[Sequence[int]]) -> bool:
    """True when the cone generated by ``vectors`` contains no line."""
    vecs = [tuple(v) for v in vectors if any(v)]
    if not vecs:
        return True
    n = len(vecs[0])
    a = [[v[i] for v in vecs] for i in range(n)] + [[1] * len(vecs)]
    return nonneg_solution(a, [0] * n + [1]) is None


def exterior_minors(a: Matrix, j: int) -> Matrix:
    """Matrix of j x j minors of ``a``: rows and columns are sorted index sets."""
    if j < 0:
        raise ValueError("degree must be nonnegative")
    q, p = a.shape
    rsets = list(combinations(range(q), j))
    csets = list(combinations(range(p), j))
    if not rsets or not csets:
        return Matrix(len(rsets), len(csets))
    dense = a.tolist()
    entries = {}
    for ri, rs in enumerate(rsets):
        for ci, cs in enumerate(csets):
            d = det([[dense[r][c] for c in cs] for r in rs])
            if d:
                entries[(ri, ci)] = d
    return Matrix.from_entries(len(rsets), len(csets), entries)
