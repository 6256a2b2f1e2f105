import random
from math import comb

from hypothesis import given, settings
from hypothesis import strategies as st

from toriclink.cells import link_base_poset, variety_poset
from toriclink.coefficients import build_coeff_system, exterior_power_map, wedge_basis
from toriclink.fuzz import random_four_cone
from toriclink.linalg import Matrix


def test_wedge_basis_sizes():
    for r in range(6):
        for j in range(r + 1):
            assert len(wedge_basis(r, j)) == comb(r, j)
    assert wedge_basis(3, 2) == [(0, 1), (0, 2), (1, 2)]


def test_exterior_power_of_identity_and_zero():
    assert exterior_power_map(Matrix.identity(3), 2) == Matrix.identity(3)
    assert exterior_power_map(Matrix.identity(3), 0).tolist() == [[1]]
    assert exterior_power_map(Matrix(0, 2), 0).tolist() == [[1]]
    assert exterior_power_map(Matrix(0, 2), 1).shape == (0, 2)


def _check_system(poset, rays, n):
    coeffs = build_coeff_system(poset, rays, n)
    for cell in poset.cells:
        k = len(cell.face)
        assert coeffs.fiber_rank(cell.id) <= n
        if k == 0:
            assert coeffs.fiber_rank(cell.id) == n
    for (c, f), q in coeffs.transitions.items():
        assert q @ coeffs.projections[c] == coeffs.projections[f]
        assert q.nrows <= q.ncols
    return coeffs


def test_variety_fibers(fans):
    for f in fans.values():
        p = variety_poset(f)
        coeffs = _check_system(p, f.rays, f.ambient_rank)
        for cell in p.cells:
            # fiber rank equals the dimension of the dual cell
            assert coeffs.fiber_rank(cell.id) == cell.dim


def test_link_fibers(cones):
    for c in cones.values():
        p = link_base_poset(c)
        coeffs = _check_system(p, c.rays, 4)
        for cell in p.cells:
            assert coeffs.fiber_rank(cell.id) == cell.dim + 1


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_transitions_compose(seed):
    """Going down two steps by either middle cell gives the same map."""
    c = random_four_cone(random.Random(seed), max_rays=8)
    p = link_base_poset(c)
    coeffs = build_coeff_system(p, c.rays, 4)
    for top, bot, mids in p.diamonds():
        maps = {coeffs.transitions[(m, bot)] @ coeffs.transitions[(top, m)] for m in mids}
        assert len(maps) == 1
        for j in range(coeffs.fiber_rank(bot) + 1):
            a, b = mids
            lhs = coeffs.power(a, bot, j) @ coeffs.power(top, a, j)
            rhs = coeffs.power(b, bot, j) @ coeffs.power(top, b, j)
            assert lhs == rhs


def _single_cover_system(n, lower, upper):
    """Coefficient system for two cells: face ``lower`` covered by face ``upper``."""
    from toriclink.cells import Cell, CellPoset

    rays = list(dict.fromkeys(lower + upper))
    idx = {r: i for i, r in enumerate(rays)}
    cells = [Cell(0, 0, frozenset(idx[r] for r in upper)), Cell(1, 1, frozenset(idx[r] for r in lower))]
    return build_coeff_system(CellPoset(cells, {1: (0,)}), rays, n)


def test_total_collapse_transition():
    coeffs = _single_cover_system(2, [(1, 0)], [(1, 0), (0, 1)])
    assert coeffs.transitions[(1, 0)].shape == (0, 1)


def test_ray_to_two_face_transition():
    coeffs = _single_cover_system(3, [(1, 1, 1)], [(1, 1, 1), (1, 0, 0)])
    q = coeffs.transitions[(1, 0)]
    assert q.shape == (1, 2)
    assert q @ coeffs.projections[1] == coeffs.projections[0]


def test_zero_face_is_identity(cones):
    p = link_base_poset(cones["cube_cone"])
    coeffs = build_coeff_system(p, cones["cube_cone"].rays, 4)
    top = next(c for c in p.cells if not c.face)
    assert coeffs.projections[top.id] == Matrix.identity(4)


def test_powers_of_surjections_are_surjective(cones):
    from toriclink.linalg import rank

    p = link_base_poset(cones["prism_cone"])
    coeffs = build_coeff_system(p, cones["prism_cone"].rays, 4)
    for (c, f), q in coeffs.transitions.items():
        for j in range(q.nrows + 1):
            assert rank(exterior_power_map(q, j)) == comb(q.nrows, j)
