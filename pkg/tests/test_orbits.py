import pytest
from hypothesis import given

from gtorus import orbits, strata
from gtorus.linalg import PAIRS, ChartCoords, FramedPoint, TorusElement, plucker_coordinates, random_frame, random_torus, to_chart, torus_act
from gtorus.orbits import ANY, ProjectiveParam
from gtorus.scalars import COMPLEX, GAUSSIAN, RATIONAL, REAL, GaussianRational
from gtorus.strata import Kind

from strategies import exact_frames, torus_exact

ALL = frozenset(PAIRS)


def frame(rows, field=GAUSSIAN):
    return FramedPoint.from_rows(rows, field)


def main_point(rng, field=COMPLEX):
    return strata.sample_stratum_point(rng, ALL, field)


def test_orbit_descriptor_examples():
    d = orbits.orbit_descriptor(ChartCoords("12", (1, 1, 1, 1), GAUSSIAN))
    assert d.kind == "Hypersurface" and d.c.equals(ProjectiveParam(1, 1, GAUSSIAN)) and d.dim_real == 6
    d = orbits.orbit_descriptor(ChartCoords("12", (0, 1, 1, 1), GAUSSIAN))
    assert d.kind == "CStarI" and d.I == {2, 3, 4} and d.dim_real == 6
    assert orbits.orbit_descriptor(ChartCoords("12", (0, 0, 0, 0))).kind == "FixedPoint"


def test_cross_ratio_examples():
    X = frame(((1, 0), (0, 1), (1, 1), (1, 1)))
    assert orbits.cross_ratio(X).to_json() == "1"
    assert strata.stratum_of(X).name == "P34"
    assert orbits.cross_ratio(frame(((1, 0), (-1, 1), (1, 1), (0, 1)))).to_json() == "2"
    assert orbits.cross_ratio(frame(((1, 0), (0, 1), (0, 0), (0, 0)))) is ANY


@given(exact_frames)
def test_cross_ratio_restricts_to_chart_formula(X):
    p = plucker_coordinates(X)
    if p[(1, 2)] == 0:
        return
    a1, a2, a3, a4 = to_chart(X, "12").a
    c = orbits.cross_ratio(X)
    if a2 * a3 == 0 and a1 * a4 == 0:
        assert c is ANY
    else:
        assert c.equals(ProjectiveParam(a1 * a4, a2 * a3, GAUSSIAN))


@given(exact_frames, torus_exact)
def test_cross_ratio_algebraic_torus_invariance_exact(X, t):
    c = orbits.cross_ratio(X)
    d = orbits.cross_ratio(torus_act(TorusElement(t, GAUSSIAN), X))
    assert (c is ANY and d is ANY) or c.equals(d)


@pytest.mark.parametrize("compact", [True, False])
def test_cross_ratio_torus_invariance(rng, compact):
    for _ in range(1000):
        X = random_frame(rng, COMPLEX)
        t = random_torus(rng, COMPLEX, compact=compact)
        assert orbits.cross_ratio(torus_act(t, X)).chordal(orbits.cross_ratio(X)) <= 1e-9


def test_transition_anchors():
    def move(c, d):
        return orbits.chart_param_transition(ProjectiveParam(c, d, GAUSSIAN), "12", "13").to_json()

    assert move(2, 1) == "2"
    assert move(0, 1) == "0"
    assert move(1, 0) == "1"
    c = GaussianRational(3, -2)
    assert orbits.chart_param_transition(ProjectiveParam(c, 1, GAUSSIAN), "12", "13").equals(
        ProjectiveParam(c, c - 1, GAUSSIAN))


@pytest.mark.parametrize("src", PAIRS)
@pytest.mark.parametrize("dst", PAIRS)
def test_transition_matches_direct_reading(rng, src, dst):
    for _ in range(10):
        X = main_point(rng, GAUSSIAN)
        moved = orbits.chart_param_transition(orbits.chart_parameter(X, src), src, dst)
        assert moved.equals(orbits.chart_parameter(X, dst))


@pytest.mark.parametrize("J", PAIRS)
def test_chart_parameter_is_chart_cross_ratio(rng, J):
    for _ in range(10):
        X = main_point(rng, GAUSSIAN)
        a1, a2, a3, a4 = to_chart(X, J).a
        assert orbits.chart_parameter(X, J).equals(ProjectiveParam(a1 * a4, a2 * a3, GAUSSIAN))


@pytest.mark.parametrize("name,value", [("P14", "0"), ("P23", "0"), ("P13", "inf"), ("P24", "inf"),
                                        ("P12", "1"), ("P34", "1"), ("P14,23", "0"),
                                        ("P13,24", "inf"), ("P12,34", "1")])
def test_boundary_parameter(name, value):
    assert orbits.boundary_parameter(strata.parse_stratum_id(name)).to_json() == value


def test_boundary_parameter_any_and_main():
    for s in strata.all_strata():
        if s.polytope.kind in (Kind.TRIANGLE, Kind.EDGE, Kind.VERTEX):
            assert orbits.boundary_parameter(s) is ANY
    with pytest.raises(ValueError):
        orbits.boundary_parameter(strata.parse_stratum_id("octahedron"))


@pytest.mark.parametrize("vertices", list(strata.admissible_table()), ids=str)
def test_boundary_parameter_matches_points(rng, vertices):
    s = strata.stratum_from_vertices(vertices)
    if s.polytope.kind is Kind.OCTAHEDRON:
        return
    X = strata.sample_stratum_point(rng, vertices, GAUSSIAN)
    got, want = orbits.cross_ratio(X), orbits.boundary_parameter(s, GAUSSIAN)
    assert (got is ANY and want is ANY) or got.equals(want)


def test_degeneration_limits(rng):
    for s in strata.all_strata():
        if s.polytope.kind not in (Kind.PYRAMID, Kind.SQUARE):
            continue
        for _ in range(5):
            a = tuple(complex(*rng.standard_normal(2)) for _ in range(4))
            rep = orbits.degeneration_limit(s, a)
            assert rep.converged and rep.steps <= 30 and rep.residual < 1e-6


@pytest.mark.parametrize("name,model,sing", [("octahedron", "SingularToric6_6pts", 6),
                                             ("P12", "SingularToric6_1pt", 1),
                                             ("P13,24", "CP1xCP1", 0), ("T14,24,34", "CP2", 0),
                                             ("E12,13", "CP1", 0), ("V12", "Point", 0)])
def test_closure_models(name, model, sing):
    rep = orbits.classify_closure(strata.parse_stratum_id(name))
    assert rep.model == model and rep.singular_point_count == sing


def test_closure_boundary_examples():
    assert orbits.closure_boundary(orbits.cstar({1})) == [orbits.cstar(())]
    got = orbits.closure_boundary(orbits.cstar({1, 2}))
    assert {frozenset(d.I) for d in got} == {frozenset({1}), frozenset({2}), frozenset()}
    hyp = orbits.orbit_descriptor(ChartCoords("12", (1, 2, 3, 4)))
    listing = orbits.closure_boundary(hyp)
    assert len(listing) == 9
    assert {frozenset(d.I) for d in listing} == {frozenset(s) for s in
                                                 ({1, 2}, {1, 3}, {2, 4}, {3, 4}, {1}, {2}, {3}, {4}, ())}


def test_closure_boundary_by_limits(rng):
    listing = {frozenset(d.I) for d in orbits.closure_boundary(orbits.orbit_descriptor(ChartCoords("12", (1, 2, 3, 4))))}
    for _ in range(10):
        a = tuple(complex(*rng.standard_normal(2)) for _ in range(4))
        assert orbits.closure_boundary_by_subgroups(a) == listing


@pytest.mark.parametrize("rows,model", [(((1, 0), (-1, 1), (1, 1), (0, 1)), "Smooth"),
                                        (((1, 0), (1, 0), (0, 1), (0, 1)), "D2xConeS2"),
                                        (((1, 0), (0, 1), (0, 0), (0, 0)), "ConeS7modT3"),
                                        (((1, 0), (0, 1), (0, 1), (0, 0)), "D1xConeS5modT2")])
def test_local_models(rows, model):
    assert orbits.local_model(frame(rows)).model == model


@pytest.mark.parametrize("rows,model", [(((1, 0), (-1, 1), (1, 1), (0, 1)), "Smooth"),
                                        (((1, 0), (1, 0), (0, 1), (0, 1)), "D2xConeRP1"),
                                        (((1, 0), (0, 1), (0, 1), (0, 0)), "D1xConeS2modZ2sq"),
                                        (((1, 0), (0, 1), (0, 0), (0, 0)), "ConeS3modZ2cube")])
@pytest.mark.parametrize("field", [RATIONAL, REAL])
def test_real_local_models(rows, model, field):
    assert orbits.local_model(frame(rows, field)).model == model


def test_local_model_k_from_stabilizer():
    for verts, rows in strata.witness_frames().items():
        rep = orbits.local_model(frame(rows))
        eff = strata.stabilizer_subtorus(verts, effective=True)
        assert rep.orbit_dim == 3 - eff.dim == strata.classify_pattern(verts).dim


def test_projective_param_json():
    assert ProjectiveParam(1, 0).to_json() == "inf"
    assert ProjectiveParam(1j, 1).to_json() == "0+1i"
    assert ProjectiveParam(GaussianRational(1, 2), 2, GAUSSIAN).to_json() == "1/2+1i"
    with pytest.raises(Exception):
        ProjectiveParam(0, 0)
