import random
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toriclink.errors import ConeError, FanAxiomViolation
from toriclink.fan import Cone, Fan, dual_description, f_vector, require_complete, validate_fan
from toriclink.fuzz import random_four_cone
from toriclink.linalg import kernel_basis, rank

seeds = st.integers(0, 2**32 - 1)


def brute_force_facets(c: Cone) -> set[frozenset[int]]:
    """Ray sets of facets, found by testing every hyperplane through d-1 rays."""
    d = c.dim
    found = set()
    for sub in combinations(range(len(c.rays)), d - 1):
        vecs = [c.rays[i] for i in sub]
        if rank(vecs) != d - 1:
            continue
        (normal,) = kernel_basis(vecs)
        vals = [sum(a * b for a, b in zip(normal, r)) for r in c.rays]
        if all(v >= 0 for v in vals) or all(v <= 0 for v in vals):
            found.add(frozenset(i for i, v in enumerate(vals) if v == 0))
    return found


class TestCone:
    def test_normalizes_and_dedupes(self):
        c = Cone([(2, 0), (0, 3), (4, 0)])
        assert c.rays == ((1, 0), (0, 1))
        assert c.dim == 2 and c.is_simplicial

    @pytest.mark.parametrize("rays, fragment", [
        ([(1, 0), (0, 0)], "ray 1 is the zero vector"),
        ([(1, 0), (-1, 0)], "not pointed"),
        ([(1, 0), (0, 1), (1, 1)], "nonnegative combination"),
        ([(1, 0), (0, 1, 0)], "length"),
    ])
    def test_rejects(self, rays, fragment):
        with pytest.raises(ConeError, match=fragment):
            Cone(rays)

    def test_hull_prunes(self):
        c = Cone.hull([(1, 0), (0, 1), (1, 1), (2, 3)])
        assert set(c.rays) == {(1, 0), (0, 1)}

    def test_lower_dimensional_restriction(self):
        c = Cone([(1, 0, 1, 0), (0, 1, 1, 0), (1, 1, 1, 0)])
        assert c.dim == 3 and not c.is_full_dimensional
        r = c.restricted()
        assert r.ambient_rank == 3 and r.is_full_dimensional
        assert f_vector(r) == f_vector(c)

    def test_interior(self, cones):
        cube = cones["cube_cone"]
        assert cube.interior_contains((0, 0, 0, 1))
        assert not cube.interior_contains((1, 1, 1, 1))
        assert not cube.interior_contains((0, 0, 0, -1))

    @pytest.mark.parametrize("name, fv", [
        ("simplex_cone", (1, 4, 6, 4, 1)),
        ("cube_cone", (1, 8, 12, 6, 1)),
        ("square_pyramid_cone", (1, 5, 8, 5, 1)),
        ("prism_cone", (1, 6, 9, 5, 1)),
    ])
    def test_f_vectors(self, cones, name, fv):
        assert f_vector(cones[name]) == fv

    @settings(max_examples=25, deadline=None)
    @given(seeds)
    def test_facets_match_brute_force(self, seed):
        c = random_four_cone(random.Random(seed), max_rays=9)
        lattice = {f.rays for f in c.faces.by_dim(3)}
        assert lattice == brute_force_facets(c)
        assert len(dual_description(c)) == len(lattice)

    @settings(max_examples=25, deadline=None)
    @given(seeds)
    def test_face_lattice_is_graded(self, seed):
        c = random_four_cone(random.Random(seed), max_rays=9)
        lat = c.faces
        for face in lat:
            expected = rank([c.rays[i] for i in face.rays]) if face.rays else 0
            assert face.dim == expected
        # every edge of the base polytope has exactly two vertices
        for edge in lat.by_dim(2):
            assert len(edge.rays) == 2
        # every 2-face lies in exactly two facets
        facets = [f.rays for f in lat.by_dim(3)]
        for edge in lat.by_dim(2):
            assert sum(edge.rays <= f for f in facets) == 2


class TestFan:
    def test_corpus_fans_validate(self, fans):
        for name, f in fans.items():
            report = validate_fan(f)
            assert report.ok and report.complete, (name, report.problems)

    def test_rejects_duplicate_and_range(self):
        with pytest.raises(ConeError, match="duplicates"):
            Fan([(1, 0), (2, 0)], [[0]])
        with pytest.raises(ConeError, match="out of range"):
            Fan([(1, 0), (0, 1)], [[0, 2]])

    def test_overlapping_cones(self):
        f = Fan([(1, 0), (0, 1), (-1, -1), (1, 1)], [[0, 1], [1, 2], [0, 2], [0, 3]])
        report = validate_fan(f)
        assert not report.ok
        assert report.bad_pairs

    def test_incomplete(self):
        f = Fan([(1, 0), (0, 1), (-1, -1)], [[0, 1], [1, 2]])
        report = validate_fan(f)
        assert not report.complete and not report.ok
        with pytest.raises(FanAxiomViolation) as err:
            require_complete(f)
        assert err.value.report is not None

    def test_cone_counts(self, fans):
        assert fans["cp2"].cone_counts() == (1, 3, 3)
        assert fans["octahedron_normal"].cone_counts() == (1, 8, 12, 6)
        assert fans["cp3"].is_simplicial and not fans["octahedron_normal"].is_simplicial

    def test_point_fan(self):
        f = Fan([], [[]], 0)
        assert validate_fan(f).ok


class TestDualDescription:
    @pytest.mark.parametrize("rays, normals", [
        ([(1, 0, 0), (0, 1, 0), (0, 0, 1)], {(1, 0, 0), (0, 1, 0), (0, 0, 1)}),
        ([(1, 0), (1, 2)], {(0, 1), (2, -1)}),
    ])
    def test_known(self, rays, normals):
        assert set(dual_description(Cone(rays))) == normals

    def test_unit_square(self):
        c = Cone([(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)])
        normals = dual_description(c)
        assert len(normals) == 4
        for a in normals:
            vals = [sum(x * y for x, y in zip(a, r)) for r in c.rays]
            assert min(vals) == 0 and vals.count(0) == 2

    @settings(max_examples=20, deadline=None)
    @given(seeds)
    def test_round_trip(self, seed):
        """Rays recovered from the normals alone are exactly the input rays."""
        c = random_four_cone(random.Random(seed), max_rays=9)
        normals = dual_description(c)
        recovered = set()
        for sub in combinations(normals, 3):
            if rank(list(sub)) != 3:
                continue
            (v,) = kernel_basis(list(sub))
            for s in (1, -1):
                w = [s * x for x in v]
                if all(sum(a * b for a, b in zip(n, w)) >= 0 for n in normals):
                    den = lcm(*(Fraction(x).denominator for x in w))
                    ints = [int(x * den) for x in w]
                    g = gcd(*ints)
                    recovered.add(tuple(x // g for x in ints))
        assert recovered == set(c.rays)


def test_orthant_alone_is_incomplete():
    f = Fan([(1, 0, 0), (0, 1, 0), (0, 0, 1)], [[0, 1, 2]])
    report = validate_fan(f)
    assert not report.complete and not report.bad_pairs
