from itertools import combinations

import pytest

from gtorus import cp5, orbits, strata
from gtorus.linalg import PAIRS, FramedPoint, TorusElement, plucker_coordinates, random_frame, random_torus, torus_act
from gtorus.moment import moment_cp5
from gtorus.orbits import ANY, ProjectiveParam
from gtorus.scalars import COMPLEX, GAUSSIAN

ALL = frozenset(PAIRS)


def pt(*z, field=GAUSSIAN):
    return cp5.CP5Point(tuple(z), field)


def test_symmetric_square_examples():
    z = pt(1, 1, 1, 1, 1, 1)
    assert cp5.symmetric_square_act(TorusElement((1, 1, 1, 1), GAUSSIAN), z) == z
    assert cp5.symmetric_square_act(TorusElement((2, 1, 1, 1), GAUSSIAN), z).z == (2, 2, 2, 1, 1, 1)
    w = cp5.symmetric_square_act(TorusElement((3, 3, 3, 3), GAUSSIAN), z)
    assert w.z == (9,) * 6 and w.proportional_to(z)


def test_quadric_examples():
    p = plucker_coordinates(FramedPoint.from_rows(((1, 0), (-1, 1), (1, 1), (0, 1)), GAUSSIAN))
    assert cp5.is_on_plucker_quadric(cp5.CP5Point.from_plucker(p))
    assert not cp5.is_on_plucker_quadric(pt(1, 0, 0, 0, 0, 1))
    assert cp5.is_on_plucker_quadric(pt(1, 0, 0, 0, 0, 0))


def test_stratum_examples():
    s = cp5.cp5_stratum(pt(1, 1, 1, 1, 1, 1))
    assert s.vertices == ALL and s.param.equals(cp5.CP5Param((1, 1, 1), GAUSSIAN))
    assert cp5.chart0_param((1, 1, 1, 1, 1)) == (1, 1)
    s = cp5.cp5_stratum(pt(1, 1, 1, 1, 1, 0))
    assert s.vertices == ALL - {(3, 4)} and s.param.equals(cp5.CP5Param((1, 1, 0), GAUSSIAN))
    s = cp5.cp5_stratum(pt(1, 0, 0, 0, 0, 0))
    assert s.vertices == {(1, 2)} and s.dim == 0 and s.param is ANY


def test_every_vertex_subset_occurs():
    for k in range(1, 7):
        for sub in combinations(range(6), k):
            z = pt(*[1 if i in sub else 0 for i in range(6)])
            assert cp5.cp5_stratum(z).vertices == frozenset(PAIRS[i] for i in sub)


def test_stratification_compatibility(rng):
    for verts in strata.admissible_table():
        for field in (GAUSSIAN, COMPLEX):
            X = strata.sample_stratum_point(rng, verts, field)
            z = cp5.CP5Point.from_plucker(plucker_coordinates(X))
            assert cp5.cp5_stratum(z).vertices == verts
            assert cp5.is_on_plucker_quadric(z)


def test_action_commutes_with_plucker(rng):
    for _ in range(1000):
        X = random_frame(rng, COMPLEX)
        t = random_torus(rng, COMPLEX)
        lhs = cp5.CP5Point.from_plucker(plucker_coordinates(torus_act(t, X)))
        rhs = cp5.symmetric_square_act(t, cp5.CP5Point.from_plucker(plucker_coordinates(X)))
        assert lhs.proportional_to(rhs)


def test_moment_invariance(rng):
    for _ in range(200):
        z = cp5.CP5Point(tuple(complex(*rng.standard_normal(2)) for _ in range(6)))
        t = random_torus(rng, COMPLEX, compact=True)
        assert moment_cp5(cp5.symmetric_square_act(t, z)).distance(moment_cp5(z)) <= 1e-12


def test_fixed_points_are_coordinate_points(rng):
    t = TorusElement((2, 3, 5, 7), GAUSSIAN)  # pairwise-distinct products t_i t_j
    for k in range(6):
        assert cp5.is_fixed_point(pt(*[int(i == k) for i in range(6)]), t)
    for _ in range(200):
        v = rng.integers(-2, 3, size=6)
        if not v.any():
            continue
        z = pt(*[int(x) for x in v])
        if len(z.support()) > 1:
            assert not cp5.is_fixed_point(z, t)


def test_main_parameter_is_an_orbit_invariant(rng):
    for _ in range(100):
        z = cp5.CP5Point(tuple(complex(*rng.standard_normal(2)) for _ in range(6)))
        t = random_torus(rng, COMPLEX)
        assert cp5.cp5_param(cp5.symmetric_square_act(t, z)).chordal(cp5.cp5_param(z)) <= 1e-9


def test_main_parameter_separates_orbits(rng):
    """Points with different parameters never lie on a common sampled orbit."""
    for _ in range(100):
        z = cp5.CP5Point(tuple(complex(*rng.standard_normal(2)) for _ in range(6)))
        w = cp5.CP5Point(tuple(complex(*rng.standard_normal(2)) for _ in range(6)))
        cz, cw = cp5.cp5_param(z), cp5.cp5_param(w)
        assert cz.chordal(cw) > 1e-6
        for _ in range(5):
            t = random_torus(rng, COMPLEX)
            assert not cp5.symmetric_square_act(t, z).proportional_to(w)


@pytest.mark.parametrize("vertices,param", list(cp5.FIXED_PARAMS.items()), ids=str)
def test_fixed_parameter_table(rng, vertices, param):
    for _ in range(5):
        z = cp5.CP5Point(tuple(complex(*rng.standard_normal(2)) if J in vertices else 0 for J in PAIRS))
        assert cp5.cp5_param(z).chordal(cp5.CP5Param(param)) <= 1e-9


def test_degeneration_limits(rng):
    for k in range(1, 3):
        for zero_idx in combinations(range(5), k):
            a = tuple(complex(*rng.standard_normal(2)) for _ in range(5))
            rep = cp5.cp5_degeneration_limit(set(zero_idx), a)
            assert rep.converged and rep.residual < 1e-6


def test_embedding_formula(rng):
    rep = cp5.embedding_formula_report(rng, samples=20)
    assert rep.selected == "(c : 1 : 1-c)"
    assert rep.max_residual <= 1e-9
    assert rep.candidate_residuals["(1/(1-c) : c/(1-c) : 1/c)"] > 1e-3


@pytest.mark.parametrize("name", ["P12", "P34", "P13", "P24", "P14", "P23", "P12,34", "P13,24", "P14,23"])
def test_embedding_at_boundary_values(rng, name):
    s = strata.parse_stratum_id(name)
    X = strata.sample_stratum_point(rng, s.polytope.vertices, GAUSSIAN)
    got = cp5.cp5_param(cp5.CP5Point.from_plucker(plucker_coordinates(X)))
    assert got.equals(cp5.induced_orbit_space_embedding(orbits.boundary_parameter(s, GAUSSIAN)))


def test_embedding_of_infinity():
    img = cp5.induced_orbit_space_embedding(ProjectiveParam(1, 0, GAUSSIAN))
    assert img.equals(cp5.CP5Param((1, 0, -1), GAUSSIAN))


def test_embedding_lands_on_main_relation(rng):
    """Main-stratum image (c1 : c2 : c3) satisfies c1 - c2 + c3 = 0 (the quadric)."""
    for _ in range(50):
        c = complex(*rng.standard_normal(2))
        c1, c2, c3 = cp5.induced_orbit_space_embedding(ProjectiveParam(c, 1)).c
        assert abs(c1 - c2 + c3) <= 1e-12 * max(1, abs(c))
