import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from gtorus import topo
from gtorus.errors import NotAComplex, NotInChart
from gtorus.linalg import PAIRS, ChartCoords, FramedPoint, random_frame, random_torus, torus_act
from gtorus.scalars import COMPLEX
from gtorus.strata import Kind
from gtorus.topo import Cell, CellComplexModel, HomologyGroup


def groups(model):
    return [str(h) for h in topo.cellular_homology(model)]


def test_point_and_interval():
    assert groups(CellComplexModel([Cell("p", 0)])) == ["Z"]
    interval = CellComplexModel([Cell("a", 0), Cell("b", 0), Cell("e", 1)], {1: [[-1], [1]]})
    assert groups(interval) == ["Z", "0"]


def test_torsion_and_non_complex():
    rp2 = CellComplexModel([Cell("v", 0), Cell("e", 1), Cell("f", 2)], {1: [[0]], 2: [[2]]})
    assert groups(rp2) == ["Z", "Z/2", "0"]
    bad = CellComplexModel([Cell("v", 0), Cell("e", 1), Cell("f", 2)], {1: [[1]], 2: [[1]]})
    with pytest.raises(NotAComplex):
        topo.cellular_homology(bad)


def test_g42_orbit_space():
    m = topo.build_g42_orbit_space_model()
    assert m.dims() == [0, 2, 3, 5] and len(m.cells) == 4
    assert groups(m) == ["Z", "0", "0", "0", "0", "Z"]
    assert m.euler_characteristic() == 0
    assert topo.format_homology(topo.cellular_homology(m)) == "H0=Z H5=Z others 0"


def test_cp5_orbit_space():
    m = topo.build_cp5_orbit_space_model()
    assert groups(m) == ["Z", "0", "0", "0", "0", "Z", "0", "Z"]


def test_real_models():
    assert groups(topo.build_real_g42_model()) == ["Z", "0", "0", "0", "Z"]
    H = topo.cellular_homology(topo.build_rp5_model())
    assert topo.format_homology(H) == "H0=Z H4=Z/2 others 0"


@pytest.mark.parametrize("name", sorted(topo.SPACES))
def test_models_match_join_oracle(name):
    assert topo.homology_matches_join(name)


@pytest.mark.parametrize("name", sorted(topo.SPACES))
def test_boundary_squares_to_zero(name):
    m = topo.build_space(name)
    from gtorus.intlinalg import matmul

    for k in range(2, m.top_dim + 1):
        A, B = m.matrix(k - 1), m.matrix(k)
        if A and A[0] and B and B[0]:
            assert not any(v for r in matmul(A, B) for v in r)


def test_join_oracle_known_cases():
    # S^2 * S^1 = S^4, S^2 * CP^1 = S^5
    assert [str(h) for h in topo.join_homology("S2", "RP1")][4] == "Z"
    h = topo.join_homology("S2", "CP1")
    assert [str(x) for x in h][:6] == ["Z", "0", "0", "0", "0", "Z"]


def test_admissible_complex():
    W = topo.build_admissible_complex(True)
    Q = topo.build_admissible_complex(False)
    assert W.counts_by_dim() == (6, 12, 11, 7) and len(W.cells) == 36
    assert len(Q.cells) == 35
    assert W.is_closed() and Q.is_closed()
    assert W.chi_monotone()
    assert W.euler_characteristic() == -2
    for c in W.cells:
        if c.kind is Kind.SQUARE:
            edges = [F for F in W.all_faces(c) if len(F) == 2]
            verts = [F for F in W.all_faces(c) if len(F) == 1]
            assert len(c.faces) == 4 and len(edges) == 4 and len(verts) == 4
    import json

    doc = json.loads(W.to_json())
    assert len(doc["cells"]) == 36
    assert W.to_dot().startswith("digraph W")


def test_morse_values():
    assert topo.critical_values() == {"12": 3, "13": 5, "14": 9, "23": 6, "24": 10, "34": 12}
    assert len(set(topo.critical_values().values())) == 6
    X = FramedPoint.from_rows(((1, 0), (0, 1), (1, 0), (0, 1)))
    assert abs(topo.morse_value(X) - 7.5) <= 1e-12


def test_morse_torus_invariance(rng):
    for _ in range(100):
        X = random_frame(rng, COMPLEX)
        t = random_torus(rng, COMPLEX, compact=True)
        assert abs(topo.morse_value(torus_act(t, X)) - topo.morse_value(X)) <= 1e-12


@pytest.mark.parametrize("J", PAIRS)
def test_chart_origins_are_nondegenerate_critical_points(J):
    rep = topo.morse_gradient_check(J)
    assert rep.gradient_norm <= 1e-6
    assert rep.nondegenerate and rep.analytic_match


def test_hessian_at_chart_12_origin():
    rep = topo.morse_gradient_check("12")
    assert np.allclose(rep.hessian_diag, [6, 6, 14, 14, 4, 4, 12, 12], atol=1e-3)
    # 2 (h(neighbour vertex) - h(delta_12)) for the neighbours 23, 24, 13, 14
    assert topo.analytic_hessian_diag("12") == (6, 14, 4, 12)


def test_non_critical_points(rng):
    assert topo.morse_gradient_check("12", ChartCoords("12", (1, 1, 1, 1))).gradient_norm > 1e-3
    scan = topo.morse_critical_scan(rng, samples_per_chart=20)
    assert scan["false_critical"] == 0 and scan["min_nonorigin_gradient"] > 1e-6


def test_morse_wrong_chart():
    with pytest.raises(NotInChart):
        topo.morse_gradient_check("13", ChartCoords("12", (0, 0, 0, 0)))


def test_homology_group_str():
    assert str(HomologyGroup(0)) == "0"
    assert str(HomologyGroup(2, (3,))) == "Z^2 + Z/3"


def test_main_orbits_fill_interior_grid(rng):
    rep = topo.fibration_spot_check(rng, samples=100, grid=5)
    assert rep["interior"] == rep["param_generic"] == rep["samples"] == 100
    assert rep["grid_points"] == len(topo.interior_grid(5)) > 0
    assert rep["grid_residual"] < 1e-9


def test_interior_grid_lies_in_open_hypersimplex():
    pts = topo.interior_grid(4)
    assert len(pts) == 19
    assert all(sum(x) == 2 and all(0 < v < 1 for v in x) for x in pts)


@settings(max_examples=20)
@given(st.lists(st.floats(0.05, 0.95), min_size=4, max_size=4))
def test_moment_preimage_hits_target(ws):
    # rescale into the open hypersimplex
    x = np.array(ws)
    x = x * 2 / x.sum()
    assume(np.all((x > 0.01) & (x < 0.99)))
    X = topo._sample_main(np.random.default_rng(7))
    s, res = topo.moment_preimage(X, x)
    assert res < 1e-9
    from gtorus.linalg import TorusElement, plucker_coordinates, torus_act
    from gtorus.moment import moment_g42
    m = moment_g42(plucker_coordinates(torus_act(TorusElement(tuple(np.exp(s / 2))), X)))
    assert m.distance(tuple(x)) < 1e-9
