"""Seeded random cones for stress testing."""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .errors import ConeError
from .fan import Cone
from .invariants import LinkReport, verify_link_formulas
from .linalg import primitive, rank


def random_four_cone(rng: random.Random, *, max_side: int = 5, min_rays: int = 4,
                     max_rays: int = 12, max_tries: int = 10_000) -> Cone:
    """Cone over the hull of random lattice points at height 1.

    Points come from a box of side at most ``max_side``; draws are rejected
    until the hull is 3-dimensional with between ``min_rays`` and
    ``max_rays`` vertices.
    """
    for _ in range(max_tries):
        side = rng.randint(2, max_side)
        npts = rng.randint(4, 14)
        pts = {(rng.randrange(side), rng.randrange(side), rng.randrange(side), 1)
               for _ in range(npts)}
        if len(pts) < 4 or rank(list(pts)) < 4:
            continue
        cone = Cone.hull(sorted(pts))
        if min_rays <= len(cone.rays) <= max_rays:
            return cone
    raise RuntimeError("could not draw a 4-cone within the ray limits")


def random_two_cone(rng: random.Random, ambient_rank: int | None = None, bound: int = 5) -> Cone:
    """Two independent random rays in Z^n, n in 2..4 unless given."""
    n = ambient_rank or rng.randint(2, 4)
    while True:
        a = tuple(rng.randint(-bound, bound) for _ in range(n))
        b = tuple(rng.randint(-bound, bound) for _ in range(n))
        if any(a) and any(b) and rank([a, b]) == 2:
            return Cone([a, b])


def random_polygon_cone(rng: random.Random, k: int, radius: int = 20) -> Cone:
    """3-cone over a lattice k-gon: rounded points on a circle at height 1."""
    if k < 3:
        raise ValueError("a polygon needs at least 3 vertices")
    r = max(radius, 3 * k)
    while True:
        phase = rng.random() * 2 * math.pi
        jitter = [rng.uniform(-0.25, 0.25) for _ in range(k)]
        pts = []
        for i in range(k):
            t = phase + 2 * math.pi * (i + jitter[i]) / k
            pts.append((round(r * math.cos(t)), round(r * math.sin(t)), 1))
        try:
            cone = Cone.hull(pts)
        except ConeError:
            continue
        if len(cone.rays) == k:
            return cone


def random_interior_rays(rng: random.Random, c: Cone, count: int, bound: int = 6) -> list[tuple[int, ...]]:
    """Distinct primitive interior rays: strictly positive combinations of the generators."""
    out: list[tuple[int, ...]] = []
    for _ in range(1000 * count):
        coeffs = [rng.randint(1, bound) for _ in c.rays]
        v = primitive([sum(a * r[i] for a, r in zip(coeffs, c.rays)) for i in range(c.ambient_rank)])
        if v not in out and c.interior_contains(v):
            out.append(v)
            if len(out) == count:
                return out
    raise RuntimeError("could not find enough distinct interior rays")


def fuzz_cones(count: int, seed: int) -> list[Cone]:
    rng = random.Random(seed)
    return [random_four_cone(rng) for _ in range(count)]


@dataclass
class FuzzSummary:
    seed: int
    count: int
    reports: list[LinkReport]

    @property
    def failed(self) -> list[int]:
        return [i for i, r in enumerate(self.reports) if not r.passed]

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "count": self.count,
            "failed": self.failed,
            "cases": [
                {"index": i, "rays": r.rays, "f1": r.f1, "f2": r.f2, "b2": r.b2, "m": r.m,
                 "link_betti": list(r.link_betti), "passed": r.passed,
                 "failed_checks": [ch.to_dict() for ch in r.failures()]}
                for i, r in enumerate(self.reports)
            ],
        }


def _verify_rays(args) -> LinkReport:
    i, rays = args
    return verify_link_formulas(Cone(rays), name=f"fuzz-{i}")


def run_fuzz(count: int, seed: int, workers: int = 1) -> FuzzSummary:
    """Verify ``count`` seeded random 4-cones; reports are kept in input order."""
    jobs = [(i, c.rays) for i, c in enumerate(fuzz_cones(count, seed))]
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            reports = list(ex.map(_verify_rays, jobs))
    else:
        reports = [_verify_rays(j) for j in jobs]
    return FuzzSummary(seed, count, reports)
