"""Total chain complexes (cells ⊗ exterior powers) and their Betti numbers."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import comb

from .cells import CellPoset, link_base_poset, variety_poset
from .coefficients import CoeffSystem, build_coeff_system, wedge_basis
from .fan import Cone, Fan, require_complete
from .linalg import Matrix, rank

Label = tuple[int, tuple[int, ...]]  # (cell id, wedge index set)


@dataclass
class ToricChainComplex:
    """Chain groups C_0..C_D with boundaries.

    ``boundaries[k]`` is d_k : C_k -> C_{k-1}, a (dim C_{k-1}) x (dim C_k)
    matrix; ``boundaries[0]`` is the zero map to the trivial group.
    """

    labels: list[list[Label]]
    boundaries: list[Matrix]

    @property
    def top_degree(self) -> int:
        return len(self.labels) - 1

    def dims(self) -> tuple[int, ...]:
        return tuple(len(l) for l in self.labels)

    def check(self) -> None:
        """Raise if some composite d_{k-1} d_k is nonzero."""
        for k in range(2, len(self.boundaries)):
            prod = self.boundaries[k - 1] @ self.boundaries[k]
            if not prod.is_zero():
                raise ArithmeticError(f"d_{k - 1} d_{k} != 0")


@dataclass(frozen=True)
class BettiTable:
    betti: tuple[int, ...]

    def __getitem__(self, k: int) -> int:
        if 0 <= k < len(self.betti):
            return self.betti[k]
        return 0

    def __len__(self) -> int:
        return len(self.betti)

    def __iter__(self):
        return iter(self.betti)

    @property
    def euler(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self.betti))

    def to_dict(self) -> dict:
        return {"betti": list(self.betti), "euler": self.euler}


def assemble(poset: CellPoset, coeffs: CoeffSystem) -> ToricChainComplex:
    """C_k = ⊕_cells Λ^{k - dim cell}(fiber); d = Σ incidence · Λ^j(transition)."""
    top = max(c.dim + coeffs.fiber_rank(c.id) for c in poset.cells) if poset.cells else 0
    labels: list[list[Label]] = [[] for _ in range(top + 1)]
    for cell in poset.cells:
        r = coeffs.fiber_rank(cell.id)
        for j in range(r + 1):
            for s in wedge_basis(r, j):
                labels[cell.dim + j].append((cell.id, s))
    # offsets of each (cell, degree j) block inside its chain group
    offset: dict[tuple[int, int], int] = {}
    for k, labs in enumerate(labels):
        for pos, (cid, s) in enumerate(labs):
            key = (cid, len(s))
            if key not in offset:
                offset[key] = pos
    boundaries = [Matrix(0, len(labels[0]))]
    for k in range(1, top + 1):
        entries: dict[tuple[int, int], int] = {}
        for cell in poset.cells:
            j = k - cell.dim
            r = coeffs.fiber_rank(cell.id)
            if not 0 <= j <= r:
                continue
            col0 = offset[(cell.id, j)]
            for f in poset.facets[cell.id]:
                if j > coeffs.fiber_rank(f):
                    continue
                sign = poset.incidence[(cell.id, f)]
                row0 = offset[(f, j)]
                lam = coeffs.power(cell.id, f, j)
                for a in range(lam.nrows):
                    for b, v in lam.row(a).items():
                        key = (row0 + a, col0 + b)
                        entries[key] = entries.get(key, 0) + sign * v
        boundaries.append(Matrix.from_entries(len(labels[k - 1]), len(labels[k]), entries))
    cx = ToricChainComplex(labels, boundaries)
    expected = [0] * (top + 1)
    for cell in poset.cells:
        r = coeffs.fiber_rank(cell.id)
        for j in range(r + 1):
            expected[cell.dim + j] += comb(r, j)
    assert list(cx.dims()) == expected
    return cx


def build_variety_complex(f: Fan, *, check: bool = True) -> ToricChainComplex:
    """Chain model of the compact toric variety of a complete fan; top degree 2n."""
    require_complete(f)
    poset = variety_poset(f)
    coeffs = build_coeff_system(poset, f.rays, f.ambient_rank)
    cx = assemble(poset, coeffs)
    if check:
        cx.check()
    return cx


def build_link_complex(c: Cone, *, check: bool = True) -> ToricChainComplex:
    """Chain model of the link of the orbit of a cone; top degree 2d - 1.

    Lower-dimensional cones are first restricted to their saturated span.
    """
    if c.dim < 2:
        raise ValueError("link complexes need a cone of dimension at least 2")
    c = c.restricted()
    poset = link_base_poset(c)
    coeffs = build_coeff_system(poset, c.rays, c.ambient_rank)
    cx = assemble(poset, coeffs)
    if check:
        cx.check()
    return cx


def betti(cx: ToricChainComplex, workers: int = 1) -> BettiTable:
    """Exact rational Betti numbers b_k = dim C_k - rk d_k - rk d_{k+1}."""
    mats = cx.boundaries[1:]
    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            ranks = list(ex.map(rank, mats))
    else:
        ranks = [rank(m) for m in mats]
    ranks = [0] + ranks + [0]
    dims = cx.dims()
    return BettiTable(tuple(dims[k] - ranks[k] - ranks[k + 1] for k in range(len(dims))))


def variety_betti(f: Fan) -> BettiTable:
    return betti(build_variety_complex(f))


def link_betti(c: Cone) -> BettiTable:
    return betti(build_link_complex(c))
