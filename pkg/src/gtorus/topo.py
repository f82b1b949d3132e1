"""Cell models of the orbit spaces, cellular homology, admissible complexes, Morse checks.

Orbit-space models follow one recipe.  The space is (Delta x F)/~ with the
fibre F collapsed over the boundary sphere of the octahedron Delta.  Its
cells are:

* the boundary sphere, one 0-cell and one 2-cell;
* int(Delta) x f for every cell f of F, of dimension 3 + dim f.

Boundaries: d(Delta x pt) = the 2-cell, and for dim f > 0,
d(Delta x f) = -(Delta x df) since the part over the boundary collapses.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product

import numpy as np

from . import polytope as poly
from .errors import NotAComplex, NotInChart
from .intlinalg import elementary_divisors, matmul
from .linalg import (
    PAIRS,
    ChartCoords,
    FramedPoint,
    TorusElement,
    chart_plucker_ratios,
    frame_from_chart,
    pair_label,
    parse_pair,
    plucker_coordinates,
    random_frame,
    torus_act,
)
from .moment import delta, moment_g42
from .strata import Kind, all_strata, stabilizer_subtorus, subtorus_contains


# chain complexes -------------------------------------------------------------------

@dataclass(frozen=True)
class Cell:
    name: str
    dim: int


@dataclass
class CellComplexModel:
    """Cells and integer boundary matrices ``boundary[k]`` : C_k -> C_{k-1}."""

    cells: list
    boundary: dict = dc_field(default_factory=dict)
    space_tag: str = ""

    def cells_in(self, k: int) -> list:
        return [c for c in self.cells if c.dim == k]

    @property
    def top_dim(self) -> int:
        return max((c.dim for c in self.cells), default=-1)

    def matrix(self, k: int) -> list[list[int]]:
        rows = len(self.cells_in(k - 1))
        cols = len(self.cells_in(k))
        M = self.boundary.get(k)
        if M is None:
            return [[0] * cols for _ in range(rows)]
        return M

    def euler_characteristic(self) -> int:
        return sum((-1) ** c.dim for c in self.cells)

    def dims(self) -> list[int]:
        return sorted(c.dim for c in self.cells)


@dataclass(frozen=True)
class HomologyGroup:
    rank: int
    torsion: tuple = ()

    def __str__(self):
        parts = ["Z" if self.rank == 1 else f"Z^{self.rank}"] if self.rank else []
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def _rank_and_torsion(M) -> tuple[int, tuple]:
    if not M or not M[0]:
        return 0, ()
    d = elementary_divisors(M)
    return len(d), tuple(x for x in d if x > 1)


def cellular_homology(c: CellComplexModel) -> list[HomologyGroup]:
    top = c.top_dim
    for k in range(2, top + 1):
        A, B = c.matrix(k - 1), c.matrix(k)
        if A and A[0] and B and B[0]:
            if any(v for r in matmul(A, B) for v in r):
                raise NotAComplex(f"boundary_{k - 1} o boundary_{k} != 0")
    out = []
    for k in range(top + 1):
        n = len(c.cells_in(k))
        rk, _ = _rank_and_torsion(c.matrix(k)) if k > 0 else (0, ())
        rk1, tors = _rank_and_torsion(c.matrix(k + 1))
        out.append(HomologyGroup(n - rk - rk1, tors))
    return out


def format_homology(H: list[HomologyGroup]) -> str:
    nz = [f"H{k}={h}" for k, h in enumerate(H) if str(h) != "0"]
    return " ".join(nz) + " others 0"


# fibres and the orbit-space recipe ---------------------------------------------------

# Minimal CW structures: list of cell dims and boundary matrices.
FIBRES = {
    "CP1": ([0, 2], {}),
    "CP2": ([0, 2, 4], {}),
    "RP1": ([0, 1], {1: [[0]]}),
    "RP2": ([0, 1, 2], {1: [[0]], 2: [[2]]}),
}

SPACES = {"g42": ("G42_orbit_space", "CP1"),
          "cp5": ("CP5_orbit_space", "CP2"),
          "g42r": ("RealG42", "RP1"),
          "rp5": ("RealP5", "RP2")}


def build_orbit_space_model(fibre: str, tag: str = "") -> CellComplexModel:
    fdims, fbd = FIBRES[fibre]
    cells = [Cell("e0", 0), Cell("s2", 2)]
    for k in fdims:
        cells.append(Cell(f"D x f{k}", 3 + k))
    bd: dict[int, list[list[int]]] = {}
    for k in fdims:
        if k == 0:
            bd[3] = [[1]]
        elif fbd.get(k, [[0]])[0][0]:
            bd[3 + k] = [[-fbd[k][0][0]]]
    return CellComplexModel(cells, bd, tag)


def build_g42_orbit_space_model() -> CellComplexModel:
    return build_orbit_space_model("CP1", "G42_orbit_space")


def build_cp5_orbit_space_model() -> CellComplexModel:
    return build_orbit_space_model("CP2", "CP5_orbit_space")


def build_real_g42_model() -> CellComplexModel:
    return build_orbit_space_model("RP1", "RealG42")


def build_rp5_model() -> CellComplexModel:
    return build_orbit_space_model("RP2", "RealP5")


def build_space(name: str) -> CellComplexModel:
    tag, fibre = SPACES[name]
    return build_orbit_space_model(fibre, tag)


# join oracle -------------------------------------------------------------------------

@dataclass(frozen=True)
class ChainComplex:
    """Free chain complex: ranks[k] and boundary matrices d[k] : C_k -> C_{k-1}, k >= lo."""

    lo: int
    ranks: dict
    d: dict

    def homology(self) -> dict[int, HomologyGroup]:
        out = {}
        for k in sorted(self.ranks):
            n = self.ranks[k]
            r_in = _rank_and_torsion(self.d.get(k, []))[0] if k - 1 in self.ranks else 0
            r_out, tors = _rank_and_torsion(self.d.get(k + 1, [])) if k + 1 in self.ranks else (0, ())
            out[k] = HomologyGroup(n - r_in - r_out, tors)
        return out


def augmented(fibre_or_sphere: str) -> ChainComplex:
    """Augmented cellular chains (a (-1)-cell added), so homology is reduced homology."""
    if fibre_or_sphere == "S2":
        dims, bd = [0, 2], {}
    else:
        dims, bd = FIBRES[fibre_or_sphere]
    ranks = {-1: 1}
    for k in dims:
        ranks[k] = ranks.get(k, 0) + 1
    d = {0: [[1] * ranks[0]]}
    for k, M in bd.items():
        d[k] = M
    return ChainComplex(-1, ranks, d)


def tensor(A: ChainComplex, B: ChainComplex) -> ChainComplex:
    """Tensor product with d(a x b) = da x b + (-1)^|a| a x db."""
    basis: dict[int, list[tuple]] = {}
    for p, q in product(A.ranks, B.ranks):
        for i, j in product(range(A.ranks[p]), range(B.ranks[q])):
            basis.setdefault(p + q, []).append((p, i, q, j))
    index = {n: {b: k for k, b in enumerate(bs)} for n, bs in basis.items()}
    d = {}
    for n, bs in basis.items():
        if n - 1 not in basis:
            continue
        M = [[0] * len(bs) for _ in basis[n - 1]]
        for col, (p, i, q, j) in enumerate(bs):
            if p - 1 in A.ranks and p in A.d:
                for r in range(A.ranks[p - 1]):
                    v = A.d[p][r][i]
                    if v:
                        M[index[n - 1][(p - 1, r, q, j)]][col] += v
            if q - 1 in B.ranks and q in B.d:
                for r in range(B.ranks[q - 1]):
                    v = B.d[q][r][j]
                    if v:
                        M[index[n - 1][(p, i, q - 1, r)]][col] += (-1) ** p * v
        d[n] = M
    return ChainComplex(min(basis), {n: len(b) for n, b in basis.items()}, d)


def join_homology(X: str, Y: str) -> list[HomologyGroup]:
    """Unreduced homology of X * Y from the shifted tensor product of augmented chains."""
    T = tensor(augmented(X), augmented(Y))
    red = {n + 1: h for n, h in T.homology().items()}
    top = max(red)
    out = []
    for k in range(top + 1):
        h = red.get(k, HomologyGroup(0))
        if k == 0:
            h = HomologyGroup(h.rank + 1, h.torsion)
        out.append(h)
    return out


JOIN_FACTORS = {"g42": ("S2", "CP1"), "cp5": ("S2", "CP2"),
                "g42r": ("S2", "RP1"), "rp5": ("S2", "RP2")}


def homology_matches_join(name: str) -> bool:
    H = cellular_homology(build_space(name))
    J = join_homology(*JOIN_FACTORS[name])
    n = max(len(H), len(J))
    pad = HomologyGroup(0)
    return all((H[k] if k < len(H) else pad) == (J[k] if k < len(J) else pad) for k in range(n))


# admissible complexes ----------------------------------------------------------------

@dataclass(frozen=True)
class AdmissibleCell:
    name: str
    kind: Kind
    dim: int
    vertices: frozenset
    faces: tuple       # names of codimension-one faces
    chi: object        # StabilizerSubtorus


@dataclass
class AdmissibleComplex:
    cells: list
    include_main: bool

    @property
    def label(self) -> str:
        return "W" if self.include_main else "Q"

    def by_name(self) -> dict:
        return {c.name: c for c in self.cells}

    def counts_by_dim(self) -> tuple:
        out = [0, 0, 0, 0]
        for c in self.cells:
            out[c.dim] += 1
        return tuple(out)

    def euler_characteristic(self) -> int:
        return sum((-1) ** c.dim for c in self.cells)

    def all_faces(self, cell: AdmissibleCell) -> list[frozenset]:
        return [F for F in poly.faces(cell.vertices) if F != cell.vertices]

    def is_closed(self) -> bool:
        """Every face of a cell is itself a cell."""
        verts = {c.vertices for c in self.cells}
        return all(F in verts for c in self.cells for F in self.all_faces(c))

    def chi_monotone(self) -> bool:
        by_v = {c.vertices: c for c in self.cells}
        return all(subtorus_contains(by_v[F].chi, c.chi)
                   for c in self.cells for F in self.all_faces(c) if F in by_v)

    def to_json(self) -> str:
        doc = {"complex": self.label, "cells": [
            {"name": c.name, "kind": c.kind.value, "dim": c.dim,
             "vertices": [pair_label(J) for J in sorted(c.vertices)],
             "faces": list(c.faces), "chi": c.chi.to_json()} for c in self.cells]}
        return json.dumps(doc, indent=2) + "\n"

    def to_dot(self) -> str:
        lines = [f"digraph {self.label} {{", "  rankdir=BT;"]
        for c in self.cells:
            chi = " ".join("(" + ",".join(str(x) for x in v) + ")" for v in c.chi.lattice_basis)
            lines.append(f'  "{c.name}" [label="{c.name}\\nchi dim {c.chi.dim}: {chi}"];')
        for c in self.cells:
            for f in c.faces:
                lines.append(f'  "{f}" -> "{c.name}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_admissible_complex(include_main: bool = True) -> AdmissibleComplex:
    """Admissible polytopes glued along faces; without the main cell this is the complex Q."""
    strata = [s for s in all_strata()
              if include_main or s.polytope.kind is not Kind.OCTAHEDRON]
    names = {s.polytope.vertices: s.name for s in all_strata()}
    cells = []
    for s in strata:
        P = s.polytope
        facets = [F for F in poly.faces(P.vertices) if poly.affine_dim(F) == P.dim - 1]
        cells.append(AdmissibleCell(
            s.name, P.kind, P.dim, P.vertices,
            tuple(sorted(names[F] for F in facets)),
            stabilizer_subtorus(s.pattern)))
    cells.sort(key=lambda c: (c.dim, c.name))
    return AdmissibleComplex(cells, include_main)


# Morse function -------------------------------------------------------------------

NU = (1, 2, 4, 8)
REFERENCE_HESSIAN_12 = (12, 20, 10, 18)


def morse_value(X: FramedPoint, nu=NU) -> float:
    m = moment_g42(plucker_coordinates(X))
    return float(sum(float(x) * w for x, w in zip(m, nu)))


def vertex_value(J, nu=NU) -> int:
    return sum(a * b for a, b in zip(delta(J), nu))


def critical_values(nu=NU) -> dict:
    return {pair_label(J): vertex_value(J, nu) for J in PAIRS}


def analytic_hessian_diag(chart, nu=NU) -> tuple:
    """Second derivative in Re a_k and Im a_k at the chart origin: 2 (h(delta_q) - h(delta_J)).

    Near the origin mu = delta_J + sum |a_k|^2 (delta_{q_k} - delta_J) + O(|a|^4),
    where a_k = +-P^{q_k}/P^J.
    """
    J = parse_pair(chart)
    h0 = vertex_value(J, nu)
    return tuple(2 * (vertex_value(q, nu) - h0) for _, q in chart_plucker_ratios(J))


def _chart_function(chart, nu):
    J = parse_pair(chart)

    def f(x):
        a = tuple(complex(x[2 * k], x[2 * k + 1]) for k in range(4))
        return morse_value(frame_from_chart(ChartCoords(J, a)), nu)

    return f


def fd_gradient(f, x, h=1e-5) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    g = np.zeros_like(x)
    for i in range(len(x)):
        e = np.zeros_like(x)
        e[i] = h
        g[i] = (f(x + e) - f(x - e)) / (2 * h)
    return g


def fd_hessian_diag(f, x, h=1e-4) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    f0 = f(x)
    out = np.zeros_like(x)
    for i in range(len(x)):
        e = np.zeros_like(x)
        e[i] = h
        out[i] = (f(x + e) - 2 * f0 + f(x - e)) / (h * h)
    return out


@dataclass(frozen=True)
class MorseReport:
    nu: tuple
    chart: tuple
    point: tuple
    value: float
    gradient_norm: float
    hessian_diag: tuple | None          # finite differences, 8 real coordinates
    analytic_hessian: tuple | None      # per complex coordinate, duplicated over (x, y)
    reference_hessian: tuple | None     # (12,20,10,18) duplicated, chart 12 origin only
    reference_match: bool | None
    analytic_match: bool | None
    critical_values: dict
    nondegenerate: bool | None

    def to_json(self) -> dict:
        return {k: (list(v) if isinstance(v, tuple) else v) for k, v in self.__dict__.items()}


def morse_gradient_check(chart, a: ChartCoords | None = None, nu=NU,
                         grad_step: float = 1e-5, hess_step: float = 1e-4,
                         hess_tol: float = 1e-3) -> MorseReport:
    J = parse_pair(chart)
    if a is None:
        a = ChartCoords(J, (0, 0, 0, 0))
    if a.chart != J:
        raise NotInChart(f"coordinates belong to chart {a.chart}, not {J}")
    f = _chart_function(J, nu)
    x = []
    for v in a.a:
        v = complex(v)
        x += [v.real, v.imag]
    g = fd_gradient(f, x, grad_step)
    at_origin = all(abs(v) == 0 for v in x)
    hd = an = ref = None
    ref_ok = an_ok = nondeg = None
    if at_origin:
        hd = tuple(float(v) for v in fd_hessian_diag(f, x, hess_step))
        an = tuple(float(v) for v in analytic_hessian_diag(J, nu) for _ in range(2))
        an_ok = all(abs(p - q) <= hess_tol for p, q in zip(hd, an))
        nondeg = all(abs(v) > hess_tol for v in hd)
        if J == (1, 2) and tuple(nu) == NU:
            ref = tuple(float(v) for v in REFERENCE_HESSIAN_12 for _ in range(2))
            ref_ok = all(abs(p - q) <= hess_tol for p, q in zip(hd, ref))
    return MorseReport(tuple(nu), J, tuple(x), f(x), float(np.linalg.norm(g)), hd, an, ref,
                       ref_ok, an_ok, critical_values(nu), nondeg)


def morse_critical_scan(rng, samples_per_chart: int = 20, nu=NU, threshold: float = 1e-6) -> dict:
    """Chart origins are critical; random non-origin points are not."""
    origins = {}
    false_critical = 0
    min_norm = math.inf
    for J in PAIRS:
        origins[pair_label(J)] = morse_gradient_check(J, nu=nu).gradient_norm
        for _ in range(samples_per_chart):
            a = ChartCoords(J, tuple(complex(*rng.standard_normal(2)) for _ in range(4)))
            n = morse_gradient_check(J, a, nu=nu).gradient_norm
            min_norm = min(min_norm, n)
            false_critical += n <= threshold
    return {"origin_gradients": origins, "false_critical": false_critical,
            "min_nonorigin_gradient": min_norm}


# fibration spot check ------------------------------------------------------------

def moment_preimage(X: FramedPoint, target, tol: float = 1e-12, max_iter: int = 100):
    """Real torus element s with mu(exp(s/2) . X) = target, for X in the main stratum.

    mu(exp(s/2) . X) is the gradient of the convex function
    phi(s) = log sum_J |p_J|^2 exp(<s, delta_J>), so damped Newton on
    phi(s) - <s, target> (with s4 = 0 fixing the diagonal direction) converges.
    Returns ``(s, residual)``.
    """
    p = plucker_coordinates(X)
    logw = np.log(np.array([abs(complex(v)) ** 2 for v in p.p]))
    D = np.array([delta(J) for J in PAIRS], dtype=float)[:, :3]
    x = np.asarray(target, dtype=float)[:3]

    def parts(s):
        e = logw + D @ s
        m = e.max()
        pi = np.exp(e - m)
        z = pi.sum()
        pi /= z
        g = pi @ D
        return m + math.log(z) - s @ x, g - x, D.T @ (pi[:, None] * D) - np.outer(g, g)

    s = np.zeros(3)
    f, g, H = parts(s)
    for _ in range(max_iter):
        if np.abs(g).max() <= tol:
            break
        step = np.linalg.lstsq(H, -g, rcond=None)[0]
        n = np.linalg.norm(step)
        if n > 4.0:  # keep the softmax away from saturation
            step *= 4.0 / n
        t = 1.0
        while t > 1e-12:
            f2, g2, H2 = parts(s + t * step)
            # near the optimum f is flat to rounding; judge by the gradient instead
            if f2 <= f + 1e-4 * t * (g @ step) or np.abs(g2).max() < 0.5 * np.abs(g).max():
                break
            t /= 2
        s, f, g, H = s + t * step, f2, g2, H2
    return np.append(s, 0.0), float(np.abs(g).max())


def interior_grid(n: int = 4) -> list[tuple]:
    """Points of int(Delta_{4,2}) with coordinates in (1/n) Z."""
    vals = [Fraction(k, n) for k in range(1, n)]
    return [x for x in product(vals, repeat=4) if sum(x) == 2]


def fibration_spot_check(rng, samples: int = 200, grid: int = 4) -> dict:
    """Main-stratum orbits fill int(Delta) and carry a parameter in C - {0, 1}.

    Every grid point of the interior is hit (up to Newton residual) by the
    real-torus orbit of a random main-stratum point.
    """
    from .orbits import cross_ratio

    interior = param_ok = 0
    for _ in range(samples):
        X = random_frame(rng)
        m = moment_g42(plucker_coordinates(X))
        interior += all(0 < float(v) < 1 for v in m)
        v = cross_ratio(X).value()
        param_ok += v is not None and abs(v) > 1e-12 and abs(v - 1) > 1e-12
    pts = interior_grid(grid)
    worst = 0.0
    for x in pts:
        X = _sample_main(rng)
        s, _ = moment_preimage(X, x)
        t = TorusElement(tuple(np.exp(s / 2)))
        worst = max(worst, moment_g42(plucker_coordinates(torus_act(t, X))).distance(x))
    return {"samples": samples, "interior": interior, "param_generic": param_ok,
            "grid_points": len(pts), "grid_residual": worst}


def _sample_main(rng) -> FramedPoint:
    while True:
        X = random_frame(rng)
        if len(plucker_coordinates(X).support()) == 6:
            return X
