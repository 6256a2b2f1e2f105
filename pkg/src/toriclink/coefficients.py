"""Quotient-lattice coefficient systems over cell posets.

Each cell carries the rational homology of the torus left after collapsing
the subtorus of its cone; that homology is the exterior algebra of the
quotient Q^n / span(face), and collapsing further along a face inclusion
acts by the exterior powers of the induced quotient map.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Sequence

from .cells import CellPoset
from .linalg import Matrix, exterior_minors, quotient_projection, saturate, solve_matrix


def wedge_basis(r: int, j: int) -> list[tuple[int, ...]]:
    """Sorted j-subsets of range(r), the basis of the j-th exterior power."""
    return list(combinations(range(r), j))


def exterior_power_map(a: Matrix, j: int) -> Matrix:
    """Induced map on j-th exterior powers: entry (S, T) is the S,T minor of ``a``."""
    out = exterior_minors(a, j)
    assert out.shape == (comb(a.nrows, j), comb(a.ncols, j))
    return out


@dataclass
class CoeffSystem:
    """Per-cell projections P and per-cover transition maps Q with Q P_src = P_dst."""

    ambient_rank: int
    projections: dict[int, Matrix]
    transitions: dict[tuple[int, int], Matrix]
    _powers: dict = field(default_factory=dict, repr=False, compare=False)

    def fiber_rank(self, cell: int) -> int:
        return self.projections[cell].nrows

    def power(self, cell: int, facet: int, j: int) -> Matrix:
        key = (cell, facet, j)
        if key not in self._powers:
            self._powers[key] = exterior_power_map(self.transitions[(cell, facet)], j)
        return self._powers[key]


def build_coeff_system(poset: CellPoset, rays: Sequence[Sequence[int]], ambient_rank: int) -> CoeffSystem:
    """Quotient projections for every cell and the forced transition maps.

    ``rays`` are the generators indexed by the cells' ``face`` sets.
    """
    n = ambient_rank
    proj: dict[int, Matrix] = {}
    for cell in poset.cells:
        vecs = [rays[i] for i in sorted(cell.face)]
        proj[cell.id] = quotient_projection(n, saturate(vecs, n)) if vecs else Matrix.identity(n)
    trans: dict[tuple[int, int], Matrix] = {}
    for c, fs in poset.facets.items():
        src = proj[c]
        for f in fs:
            dst = proj[f]
            # src is surjective, so Q is unique: solve src^T Q^T = dst^T
            try:
                q = solve_matrix(src.T, dst.T).T
            except ValueError:
                raise ValueError(f"span of cell {c} is not contained in span of cell {f}") from None
            if q @ src != dst:
                raise ValueError(f"span of cell {c} is not contained in span of cell {f}")
            trans[(c, f)] = q
    return CoeffSystem(n, proj, trans)
