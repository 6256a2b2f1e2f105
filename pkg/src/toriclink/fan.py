"""Rational polyhedral cones, fans, face lattices and fan validation."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from .errors import ConeError, FanAxiomViolation
from .linalg import (
    cross_normal,
    is_pointed,
    nonneg_solution,
    primitive,
    rank,
    saturate,
    solve,
)

log = logging.getLogger(__name__)


class Face(NamedTuple):
    rays: frozenset[int]
    dim: int


class FaceLattice:
    """Faces of a cone ordered by inclusion, graded by dimension.

    Faces are identified by the set of ray indices they contain; ``faces``
    is sorted by (dim, sorted ray indices), so the zero face comes first and
    the cone itself last.
    """

    def __init__(self, faces: Iterable[Face]):
        self.faces: tuple[Face, ...] = tuple(sorted(faces, key=lambda f: (f.dim, sorted(f.rays))))
        self._index = {f.rays: i for i, f in enumerate(self.faces)}
        up: dict[int, list[int]] = {i: [] for i in range(len(self.faces))}
        for i, f in enumerate(self.faces):
            for j, g in enumerate(self.faces):
                if g.dim == f.dim + 1 and f.rays < g.rays:
                    up[i].append(j)
        self.covers = {i: tuple(v) for i, v in up.items()}

    def __len__(self) -> int:
        return len(self.faces)

    def __iter__(self):
        return iter(self.faces)

    def index(self, rays: Iterable[int]) -> int:
        return self._index[frozenset(rays)]

    def __contains__(self, rays) -> bool:
        return frozenset(rays) in self._index

    def by_dim(self, k: int) -> list[Face]:
        return [f for f in self.faces if f.dim == k]

    @property
    def top(self) -> Face:
        return self.faces[-1]

    def below(self, i: int) -> tuple[int, ...]:
        """Faces covered by face ``i``."""
        return tuple(j for j, ups in self.covers.items() if i in ups)

    def interval_middles(self, lo: int, hi: int) -> list[int]:
        return [m for m in self.covers[lo] if hi in self.covers[m]]


def _local_facets(vectors: Sequence[tuple[int, ...]], r: int) -> list[tuple[int, ...]]:
    """Primitive inward facet normals of a full-dimensional cone in Z^r.

    Every facet hyperplane is spanned by r-1 independent generators, so
    enumerating those subsets finds them all.
    """
    if r == 0:
        return []
    if r == 1:
        signs = {1 if v[0] > 0 else -1 for v in vectors}
        return [(s,) for s in sorted(signs)] if len(signs) == 1 else []
    normals: set[tuple[int, ...]] = set()
    for sub in combinations(vectors, r - 1):
        nv = cross_normal(sub)
        if not any(nv):
            continue
        nv = primitive(nv)
        if nv in normals or tuple(-x for x in nv) in normals:
            continue
        dots = [sum(a * b for a, b in zip(nv, v)) for v in vectors]
        if all(d >= 0 for d in dots):
            normals.add(nv)
        elif all(d <= 0 for d in dots):
            normals.add(tuple(-x for x in nv))
    return sorted(normals)


class Cone:
    """A pointed rational polyhedral cone given by primitive ray generators.

    Input rays are reduced to primitive form and deduplicated.  The cone
    must be pointed and every generator must be extremal; use
    :meth:`Cone.hull` to drop redundant generators instead of failing.
    """

    def __init__(self, rays: Sequence[Sequence[int]], ambient_rank: int | None = None):
        rays = [tuple(int(x) for x in r) for r in rays]
        if ambient_rank is None:
            if not rays:
                raise ConeError("ambient rank required for the zero cone")
            ambient_rank = len(rays[0])
        self.ambient_rank = ambient_rank
        seen: dict[tuple[int, ...], None] = {}
        for i, r in enumerate(rays):
            if len(r) != ambient_rank:
                raise ConeError(f"ray {i} has length {len(r)}, expected {ambient_rank}")
            if not any(r):
                raise ConeError(f"ray {i} is the zero vector")
            seen.setdefault(primitive(r), None)
        self.rays: tuple[tuple[int, ...], ...] = tuple(seen)
        if not is_pointed(self.rays):
            raise ConeError("cone is not pointed (contains a line)")
        redundant = self._redundant()
        if redundant:
            raise ConeError(f"ray {redundant[0]} {self.rays[redundant[0]]} is a nonnegative "
                            "combination of the other rays")

    @classmethod
    def hull(cls, generators: Sequence[Sequence[int]]) -> "Cone":
        """Cone generated by ``generators``, keeping only extremal rays."""
        gens = [primitive(g) for g in generators if any(g)]
        gens = list(dict.fromkeys(gens))
        if not is_pointed(gens):
            raise ConeError("cone is not pointed (contains a line)")
        keep = [g for i, g in enumerate(gens) if not _in_cone(g, gens[:i] + gens[i + 1:])]
        return cls(keep, len(gens[0]) if gens else None)

    def _redundant(self) -> list[int]:
        return [i for i, r in enumerate(self.rays)
                if _in_cone(r, self.rays[:i] + self.rays[i + 1:])]

    def __repr__(self) -> str:
        return f"Cone({[list(r) for r in self.rays]})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Cone) and set(self.rays) == set(other.rays)

    def __hash__(self) -> int:
        return hash(frozenset(self.rays))

    @cached_property
    def dim(self) -> int:
        return rank(self.rays) if self.rays else 0

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.ambient_rank

    @property
    def is_simplicial(self) -> bool:
        return len(self.rays) == self.dim

    @cached_property
    def span_basis(self) -> tuple[tuple[int, ...], ...]:
        """HNF basis of span(rays) ∩ Z^n."""
        return tuple(saturate(self.rays, self.ambient_rank)) if self.rays else ()

    @cached_property
    def local_rays(self) -> tuple[tuple[int, ...], ...]:
        """Rays in coordinates of :attr:`span_basis` (a full-dim cone in Z^dim)."""
        if self.is_full_dimensional:
            return self.rays
        basis = self.span_basis
        bt = [[b[i] for b in basis] for i in range(self.ambient_rank)]
        out = []
        for r in self.rays:
            y = solve(bt, r)
            out.append(tuple(int(v) for v in y))
        return tuple(out)

    def restricted(self) -> "Cone":
        """The same cone as a full-dimensional cone in its saturated span."""
        if self.is_full_dimensional:
            return self
        return Cone(self.local_rays, self.dim)

    @cached_property
    def facet_normals(self) -> tuple[tuple[int, ...], ...]:
        """Primitive inward facet normals, in span coordinates for lower-dim cones."""
        return tuple(_local_facets(self.local_rays, self.dim))

    @cached_property
    def faces(self) -> FaceLattice:
        return face_lattice(self)

    def interior_contains(self, v: Sequence[int]) -> bool:
        """Strict positivity against every facet normal (full-dim cones)."""
        if not self.is_full_dimensional:
            raise ValueError("interior test needs a full-dimensional cone")
        return all(sum(a * b for a, b in zip(n, v)) > 0 for n in self.facet_normals)


def _in_cone(v: Sequence[int], gens: Sequence[Sequence[int]]) -> bool:
    if not gens:
        return False
    n = len(v)
    a = [[g[i] for g in gens] for i in range(n)]
    return nonneg_solution(a, list(v)) is not None


def dual_description(c: Cone) -> list[tuple[int, ...]]:
    """Primitive inward facet normals: c = {x : a.x >= 0 for every a}.

    For a cone that is not full-dimensional the normals are expressed in the
    coordinates of ``c.span_basis``.
    """
    return list(c.facet_normals)


def face_lattice(c: Cone) -> FaceLattice:
    """All faces of ``c`` as intersections of facet ray sets."""
    d = c.dim
    local = c.local_rays
    everything = frozenset(range(len(c.rays)))
    if d == 0:
        return FaceLattice([Face(frozenset(), 0)])
    facet_sets = []
    for nv in c.facet_normals:
        facet_sets.append(frozenset(i for i, r in enumerate(local)
                                    if sum(a * b for a, b in zip(nv, r)) == 0))
    sets = {everything}
    for fs in facet_sets:
        sets |= {s & fs for s in sets}
    faces = []
    for s in sets:
        k = rank([c.rays[i] for i in sorted(s)]) if s else 0
        faces.append(Face(s, k))
    return FaceLattice(faces)


def f_vector(c: Cone) -> tuple[int, ...]:
    """Face counts by dimension 0..dim(c), so f[1] is the ray count.

    The alternating sum vanishes for every pointed cone of positive
    dimension (Euler relation of its base polytope); a failure means the
    face lattice is wrong.
    """
    lat = c.faces
    counts = [0] * (c.dim + 1)
    for f in lat:
        counts[f.dim] += 1
    if c.dim > 0:
        euler = sum((-1) ** i * x for i, x in enumerate(counts))
        if euler != 0:
            raise AssertionError(f"Euler relation fails for f-vector {counts}")
    if c.dim == 4 and counts[3] != counts[2] - counts[1] + 2:
        raise AssertionError(f"vertex count of the base polytope is not f2 - f1 + 2: {counts}")
    return tuple(counts)


# ---------------------------------------------------------------------------
# fans


@dataclass
class FanReport:
    """Outcome of :func:`validate_fan`."""

    ok: bool
    complete: bool
    problems: list[str] = field(default_factory=list)
    bad_pairs: list[tuple[int, int]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"ok": self.ok, "complete": self.complete, "problems": list(self.problems),
                "bad_pairs": [list(p) for p in self.bad_pairs]}


class Fan:
    """A fan given by shared primitive rays and maximal cones (ray index lists)."""

    def __init__(self, rays: Sequence[Sequence[int]], max_cones: Sequence[Sequence[int]],
                 ambient_rank: int | None = None, name: str = ""):
        rays = [tuple(int(x) for x in r) for r in rays]
        if ambient_rank is None:
            if not rays:
                raise ConeError("ambient rank required for a fan without rays")
            ambient_rank = len(rays[0])
        self.ambient_rank = ambient_rank
        self.name = name
        prim = []
        for i, r in enumerate(rays):
            if len(r) != ambient_rank:
                raise ConeError(f"ray {i} has length {len(r)}, expected {ambient_rank}")
            if not any(r):
                raise ConeError(f"ray {i} is the zero vector")
            p = primitive(r)
            if p in prim:
                raise ConeError(f"ray {i} duplicates ray {prim.index(p)}")
            prim.append(p)
        self.rays: tuple[tuple[int, ...], ...] = tuple(prim)
        mc = []
        for k, idx in enumerate(max_cones):
            idx = tuple(sorted(set(int(i) for i in idx)))
            for i in idx:
                if not 0 <= i < len(self.rays):
                    raise ConeError(f"max cone {k} references ray index {i} out of range")
            mc.append(idx)
        self.max_cones: tuple[tuple[int, ...], ...] = tuple(mc)
        self.cones = tuple(self._cone(idx) for idx in self.max_cones)

    def _cone(self, idx: Sequence[int]) -> Cone:
        cone = Cone([self.rays[i] for i in idx], self.ambient_rank)
        if len(cone.rays) != len(idx):
            raise ConeError(f"cone {list(idx)} has repeated rays")
        return cone

    def __repr__(self) -> str:
        return f"Fan({self.name or ''} n={self.ambient_rank}, {len(self.rays)} rays, {len(self.max_cones)} max cones)"

    @cached_property
    def all_cones(self) -> tuple[frozenset[int], ...]:
        """Closure of the maximal cones under faces, sorted by (dim, indices)."""
        found: dict[frozenset[int], int] = {}
        for idx, cone in zip(self.max_cones, self.cones):
            for face in cone.faces:
                found[frozenset(idx[i] for i in face.rays)] = face.dim
        return tuple(sorted(found, key=lambda s: (found[s], sorted(s))))

    @cached_property
    def cone_dims(self) -> dict[frozenset[int], int]:
        out = {}
        for idx, cone in zip(self.max_cones, self.cones):
            for face in cone.faces:
                out[frozenset(idx[i] for i in face.rays)] = face.dim
        return out

    def cone(self, rays: Iterable[int]) -> Cone:
        return self._cone(sorted(rays))

    def cone_counts(self) -> tuple[int, ...]:
        counts = [0] * (self.ambient_rank + 1)
        for s in self.all_cones:
            counts[self.cone_dims[s]] += 1
        return tuple(counts)

    @property
    def is_simplicial(self) -> bool:
        return all(c.is_simplicial for c in self.cones)


def _proper_intersection(fan: Fan, i: int, j: int) -> str | None:
    """None if max cones i and j meet in a common face, else a description."""
    a_idx, b_idx = fan.max_cones[i], fan.max_cones[j]
    common = frozenset(a_idx) & frozenset(b_idx)
    for idx, cone in ((a_idx, fan.cones[i]), (b_idx, fan.cones[j])):
        local = frozenset(idx.index(g) for g in common)
        if local not in cone.faces:
            return f"common rays {sorted(common)} do not form a face of cone {list(idx)}"
    # a point of both cones lying outside cone(common) exists iff this LP is feasible
    a_rays = [fan.rays[k] for k in a_idx]
    b_rays = [fan.rays[k] for k in b_idx]
    n = fan.ambient_rank
    rows = [[r[t] for r in a_rays] + [-r[t] for r in b_rays] for t in range(n)]
    rows.append([0 if k in common else 1 for k in a_idx] + [0] * len(b_rays))
    if nonneg_solution(rows, [0] * n + [1]) is not None:
        return f"cones {list(a_idx)} and {list(b_idx)} overlap beyond their common face"
    return None


def validate_fan(f: Fan) -> FanReport:
    """Check fan axioms and completeness.

    (a) every pair of maximal cones meets in a common face; (b) every
    maximal cone is full-dimensional; (c) every ridge of a maximal cone is
    shared by exactly two maximal cones and the adjacency graph is connected.
    """
    problems: list[str] = []
    bad: list[tuple[int, int]] = []
    n = f.ambient_rank
    for i, j in combinations(range(len(f.max_cones)), 2):
        msg = _proper_intersection(f, i, j)
        if msg:
            problems.append(msg)
            bad.append((i, j))
    full = True
    for k, c in enumerate(f.cones):
        if c.dim != n:
            full = False
            problems.append(f"max cone {k} has dim {c.dim} < {n}")
    complete = full and bool(f.max_cones)
    if complete and n > 0:
        owners: dict[frozenset[int], list[int]] = {}
        for k, (idx, cone) in enumerate(zip(f.max_cones, f.cones)):
            for face in cone.faces.by_dim(n - 1):
                owners.setdefault(frozenset(idx[i] for i in face.rays), []).append(k)
        for ridge, ks in owners.items():
            if len(ks) != 2:
                complete = False
                problems.append(f"ridge {sorted(ridge)} lies in {len(ks)} maximal cone(s)")
        adj = {k: set() for k in range(len(f.max_cones))}
        for ks in owners.values():
            for a, b in combinations(ks, 2):
                adj[a].add(b)
                adj[b].add(a)
        seen, todo = {0}, [0]
        while todo:
            for nb in adj[todo.pop()]:
                if nb not in seen:
                    seen.add(nb)
                    todo.append(nb)
        if len(seen) != len(f.max_cones):
            complete = False
            problems.append("maximal cones are not connected through shared ridges")
    elif complete and len(f.max_cones) != 1:
        complete = False
        problems.append("a fan in rank 0 has exactly one maximal cone")
    ok = not bad and full and complete
    return FanReport(ok=ok, complete=complete, problems=problems, bad_pairs=bad)


def require_complete(f: Fan) -> FanReport:
    report = validate_fan(f)
    if not report.ok:
        raise FanAxiomViolation("; ".join(report.problems) or "invalid fan", report)
    return report
