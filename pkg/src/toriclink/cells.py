"""Regular CW posets dual to fans and cones, with incidence signs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import SignAssignmentError
from .fan import Cone, Face, Fan
from .linalg import Matrix, rank


@dataclass(frozen=True)
class Cell:
    id: int
    dim: int
    face: frozenset[int]  # ray indices of the originating cone or face


class CellPoset:
    """Graded cell poset: ``facets[c]`` are the codimension-one faces of cell c.

    ``incidence`` maps (cell, facet) to +1 or -1 once signs are assigned.
    """

    def __init__(self, cells: Sequence[Cell], facets: dict[int, tuple[int, ...]],
                 incidence: dict[tuple[int, int], int] | None = None):
        self.cells = tuple(cells)
        self.facets = {c.id: tuple(facets.get(c.id, ())) for c in self.cells}
        self.incidence = dict(incidence or {})
        cof: dict[int, list[int]] = {c.id: [] for c in self.cells}
        for c, fs in self.facets.items():
            for f in fs:
                cof[f].append(c)
        self.cofacets = {k: tuple(v) for k, v in cof.items()}

    @property
    def dim(self) -> int:
        return max((c.dim for c in self.cells), default=-1)

    def by_dim(self, k: int) -> list[Cell]:
        return [c for c in self.cells if c.dim == k]

    def counts(self) -> tuple[int, ...]:
        out = [0] * (self.dim + 1)
        for c in self.cells:
            out[c.dim] += 1
        return tuple(out)

    @property
    def signed(self) -> bool:
        return all((c, f) in self.incidence for c, fs in self.facets.items() for f in fs)

    def check_graded(self) -> None:
        for c, fs in self.facets.items():
            for f in fs:
                if self.cells[f].dim != self.cells[c].dim - 1:
                    raise ValueError(f"cover {c}->{f} does not drop dimension by one")

    def diamonds(self):
        """Yield (top, bottom, middles) for every length-two interval."""
        for c in self.cells:
            below: dict[int, list[int]] = {}
            for m in self.facets[c.id]:
                for g in self.facets[m]:
                    below.setdefault(g, []).append(m)
            for g, mids in below.items():
                yield c.id, g, mids

    def check_diamond(self) -> None:
        for top, bot, mids in self.diamonds():
            if len(mids) != 2:
                raise SignAssignmentError(f"interval [{bot}, {top}] has {len(mids)} middle cells")

    def check_signs(self) -> None:
        """Signed boundary-of-boundary vanishes on every length-two interval."""
        for top, bot, mids in self.diamonds():
            s = sum(self.incidence[(top, m)] * self.incidence[(m, bot)] for m in mids)
            if s != 0:
                raise SignAssignmentError(f"d∘d != 0 on interval [{bot}, {top}]")

    def subposet(self, keep: Iterable[int]) -> "CellPoset":
        """Restriction to a downward-closed set of cells, renumbered in order."""
        keep = sorted(set(keep))
        new = {old: i for i, old in enumerate(keep)}
        cells = [Cell(new[c], self.cells[c].dim, self.cells[c].face) for c in keep]
        facets = {new[c]: tuple(new[f] for f in self.facets[c]) for c in keep}
        inc = {(new[c], new[f]): s for (c, f), s in self.incidence.items() if c in new and f in new}
        return CellPoset(cells, facets, inc)

    def boundary_matrix(self, k: int) -> Matrix:
        """Cellular boundary C_k -> C_{k-1} with constant Q coefficients."""
        top = {c.id: i for i, c in enumerate(self.by_dim(k))}
        bot = {c.id: i for i, c in enumerate(self.by_dim(k - 1))}
        entries = {}
        for c, i in top.items():
            for f in self.facets[c]:
                entries[(bot[f], i)] = self.incidence[(c, f)]
        return Matrix.from_entries(len(bot), len(top), entries)

    def betti(self) -> tuple[int, ...]:
        """Betti numbers with constant Q coefficients."""
        d = self.dim
        ranks = [0] * (d + 2)
        for k in range(1, d + 1):
            ranks[k] = rank(self.boundary_matrix(k))
        sizes = self.counts()
        return tuple(sizes[k] - ranks[k] - ranks[k + 1] for k in range(d + 1))


def _reversed_poset(faces, top_dim: int, include) -> CellPoset:
    """Cells dual to the selected faces, dim = top_dim - dim(face)."""
    chosen = [f for f in faces if include(f)]
    chosen.sort(key=lambda f: (top_dim - f.dim, sorted(f.rays)))
    cells = [Cell(i, top_dim - f.dim, f.rays) for i, f in enumerate(chosen)]
    facets = {}
    for c in cells:
        facets[c.id] = tuple(
            sorted(o.id for o in cells if o.dim == c.dim - 1 and c.face < o.face)
        )
    return CellPoset(cells, facets)


def assign_incidence_signs(p: CellPoset) -> CellPoset:
    """Choose +-1 incidences with d∘d = 0, sweeping up in dimension.

    Edges get (-1, +1) on their two vertices in cell order.  For a higher
    cell the sign of its first facet is fixed to +1 and propagated to the
    rest through shared ridges, using the diamond relation.
    """
    p.check_graded()
    p.check_diamond()
    inc: dict[tuple[int, int], int] = {}
    for cell in sorted(p.cells, key=lambda c: (c.dim, c.id)):
        fs = p.facets[cell.id]
        if cell.dim == 0 or not fs:
            continue
        if cell.dim == 1:
            if len(fs) != 2:
                raise SignAssignmentError(f"edge cell {cell.id} has {len(fs)} vertices")
            inc[(cell.id, fs[0])] = -1
            inc[(cell.id, fs[1])] = 1
            continue
        fset = set(fs)
        sign = {fs[0]: 1}
        todo = [fs[0]]
        while todo:
            f = todo.pop()
            for g in p.facets[f]:
                others = [h for h in p.cofacets[g] if h in fset and h != f]
                if len(others) != 1:
                    raise SignAssignmentError(
                        f"ridge {g} of cell {cell.id} lies in {len(others) + 1} facets")
                h = others[0]
                want = -sign[f] * inc[(f, g)] * inc[(h, g)]
                if h in sign:
                    if sign[h] != want:
                        raise SignAssignmentError(
                            f"inconsistent orientation around cell {cell.id} at ridge {g}")
                else:
                    sign[h] = want
                    todo.append(h)
        if len(sign) != len(fs):
            raise SignAssignmentError(f"boundary of cell {cell.id} is not connected")
        for f, s in sign.items():
            inc[(cell.id, f)] = s
    out = CellPoset(p.cells, p.facets, inc)
    out.check_signs()
    return out


def variety_poset(f: Fan) -> CellPoset:
    """Dual polytope of a complete fan: one (n - dim σ)-cell per cone σ."""
    n = f.ambient_rank
    lat = f.cone_dims
    faces = [Face(s, d) for s, d in lat.items()]
    return assign_incidence_signs(_reversed_poset(faces, n, lambda _: True))


def link_base_poset(c: Cone) -> CellPoset:
    """Base polytope of the link of a cone: one (d - 1 - dim φ)-cell per proper face φ."""
    d = c.dim
    if d < 2:
        raise ValueError("link base needs a cone of dimension at least 2")
    top = c.faces.top.rays
    return assign_incidence_signs(
        _reversed_poset(list(c.faces), d - 1, lambda face: face.rays != top))


def boundary_subposet(p: CellPoset) -> CellPoset:
    """All cells except the top one (the boundary sphere of a ball poset)."""
    top = p.dim
    tops = [c.id for c in p.cells if c.dim == top]
    return p.subposet(c.id for c in p.cells if c.id not in tops)
