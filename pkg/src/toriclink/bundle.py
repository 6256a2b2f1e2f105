"""Circle-bundle base fans: project the boundary of a cone along an interior ray."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import ConsistencyError, FanAxiomViolation
from .fan import Cone, Fan, FanReport, validate_fan
from .homology import BettiTable
from .linalg import Matrix, primitive, quotient_projection, saturate


@dataclass
class Check:
    """One verified identity: ``formula`` is the human-readable statement."""

    name: str
    passed: bool
    expected: object
    actual: object
    formula: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "pass": self.passed, "expected": self.expected,
                "actual": self.actual, "formula": self.formula}


@dataclass
class ProjectionResult:
    interior_ray: tuple[int, ...]
    quotient_map: Matrix
    base_fan: Fan
    validation: FanReport
    face_map: dict[frozenset[int], frozenset[int]] = field(default_factory=dict)
    bijective: bool = True

    def to_dict(self) -> dict:
        return {
            "interior_ray": list(self.interior_ray),
            "quotient_map": [list(map(int, r)) for r in self.quotient_map.tolist()],
            "base_fan": {
                "ambient_rank": self.base_fan.ambient_rank,
                "rays": [list(r) for r in self.base_fan.rays],
                "max_cones": [list(c) for c in self.base_fan.max_cones],
            },
            "validation": self.validation.to_dict(),
            "face_map_bijective": self.bijective,
        }


def default_interior_ray(c: Cone) -> tuple[int, ...]:
    """Primitive part of the sum of the ray generators."""
    if not c.is_full_dimensional:
        raise ValueError("interior ray needs a full-dimensional cone")
    total = [sum(col) for col in zip(*c.rays)]
    ray = primitive(total)
    if not c.interior_contains(ray):
        raise AssertionError(f"sum of rays {ray} is not interior to {c}")
    return ray


def project_boundary_fan(c: Cone, ray: Sequence[int] | None = None, *, strict: bool = True) -> ProjectionResult:
    """Fan in Z^(d-1) obtained by projecting the proper faces of ``c`` along ``ray``.

    Maximal cones are the images of the facets.  Raises FanAxiomViolation
    when the images fail the fan axioms (unless ``strict`` is False), and
    records whether faces map bijectively onto the cones of the result.
    """
    c = c.restricted()
    d = c.ambient_rank
    if ray is None:
        ray = default_interior_ray(c)
    ray = tuple(int(x) for x in ray)
    if len(ray) != d:
        raise ValueError(f"ray must have length {d}")
    if not any(ray):
        raise ValueError("ray must be nonzero")
    ray = primitive(ray)
    if not c.interior_contains(ray):
        raise ValueError(f"ray {ray} is not in the interior of the cone")
    pmap = quotient_projection(d, saturate([ray], d))
    images: list[tuple[int, ...]] = []
    index_of: dict[int, int] = {}
    for i, r in enumerate(c.rays):
        img = primitive(pmap.apply(list(r)))
        if img not in images:
            images.append(img)
        index_of[i] = images.index(img)
    lat = c.faces
    facets = lat.by_dim(d - 1)
    max_cones = [sorted({index_of[i] for i in f.rays}) for f in facets]
    base = Fan(images, max_cones, d - 1, name="projected base")
    report = validate_fan(base)
    face_map = {}
    for face in lat:
        if face.rays == lat.top.rays:
            continue
        face_map[face.rays] = frozenset(index_of[i] for i in face.rays)
    bijective = (len(set(face_map.values())) == len(face_map)
                 and set(face_map.values()) == set(base.all_cones))
    if not bijective:
        report.ok = False
        report.problems.append("proper faces do not map bijectively onto the projected cones")
    result = ProjectionResult(ray, pmap, base, report, face_map, bijective)
    if strict and not report.ok:
        raise FanAxiomViolation("; ".join(report.problems), report)
    return result


def gysin_check(link_b: BettiTable, base_b: BettiTable) -> list[Check]:
    """Rank relations forced by the homology sequence of a circle bundle
    over a 6-dimensional base with 7-dimensional total space."""
    L, X = link_b, base_b
    return [
        Check("b7(link) = 1", L[7] == 1, 1, L[7], "b7(L) = 1"),
        Check("b5(link) = b4(base) - 1", L[5] == X[4] - 1, X[4] - 1, L[5], "b5(L) = b4(X) - 1"),
        Check("b4(link) - b3(link) = b4(base) - b2(base)", L[4] - L[3] == X[4] - X[2],
              X[4] - X[2], L[4] - L[3], "b4(L) - b3(L) = b4(X) - b2(X)"),
        Check("b2(link) = b2(base) - 1", L[2] == X[2] - 1, X[2] - 1, L[2], "b2(L) = b2(X) - 1"),
        Check("b0(link) = b0(base)", L[0] == X[0], X[0], L[0], "b0(L) = b0(X)"),
    ]


def euler_class_kernel_rank(link_b: BettiTable, base_b: BettiTable, expected: int | None = None) -> int:
    """Rank of the kernel of capping with the Euler class, H4(base) -> H2(base).

    Read off the exact sequence 0 -> H3(X) -> H4(L) -> H4(X) -> H2(X), so it
    equals b4(L) - b3(X).
    """
    value = link_b[4] - base_b[3]
    if value < 0:
        raise ConsistencyError(f"negative kernel rank b4(L) - b3(X) = {value}")
    if expected is not None and value != expected:
        raise ConsistencyError(f"kernel rank {value} differs from b2 = {expected}")
    return value
