"""The T^4 action on CP^5 through the second symmetric power, and the Plücker quadric.

Coordinates ``z0..z5`` are indexed like Plücker coordinates (12, 13, 14, 23,
24, 34); coordinate ``{i,j}`` has weight ``x_i + x_j``.  Orbits of the
algebraic torus are separated by the invariant triple
``(z2 z3 : z1 z4 : z0 z5)``, which on chart ``z0 = 1`` is ``(c1 : c2 : 1)``
with ``c1 = z2 z3 / z5`` and ``c2 = z1 z4 / z5``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ZeroVector
from .linalg import PAIRS, ChartCoords, PluckerVector, TorusElement, frame_from_chart, pair_label, plucker_coordinates
from .orbits import ANY, ProjectiveParam
from .polytope import affine_dim
from .scalars import COMPLEX, Field


@dataclass(frozen=True)
class CP5Point:
    z: tuple
    field: Field = COMPLEX

    def __post_init__(self):
        if len(self.z) != 6:
            raise ValueError("CP^5 points have 6 homogeneous coordinates")
        z = tuple(self.field.coerce(x) for x in self.z)
        if all(x == 0 for x in z):
            raise ZeroVector("all homogeneous coordinates vanish")
        object.__setattr__(self, "z", z)

    @classmethod
    def from_plucker(cls, p: PluckerVector) -> CP5Point:
        return cls(p.p, p.field)

    @property
    def scale(self) -> float:
        return max(abs(x) for x in self.z)

    def support(self) -> frozenset:
        s = self.scale
        return frozenset(J for J, x in zip(PAIRS, self.z) if not self.field.is_zero(x, s))

    def proportional_to(self, other: CP5Point) -> bool:
        f = self.field
        scale = self.scale * other.scale
        return all(f.is_zero(self.z[i] * other.z[j] - self.z[j] * other.z[i], scale)
                   for i in range(6) for j in range(i + 1, 6))


@dataclass(frozen=True)
class CP5Param:
    """A point (c1 : c2 : c3) of CP^2."""

    c: tuple
    field: Field = COMPLEX

    def __post_init__(self):
        c = tuple(self.field.coerce(x) for x in self.c)
        if len(c) != 3 or all(x == 0 for x in c):
            raise ValueError("a CP^2 point needs three coordinates, not all zero")
        object.__setattr__(self, "c", c)

    def chordal(self, other: CP5Param) -> float:
        u = [complex(x) for x in self.c]
        v = [complex(x) for x in other.c]
        nu = math.sqrt(sum(abs(x) ** 2 for x in u))
        nv = math.sqrt(sum(abs(x) ** 2 for x in v))
        # |u ^ v| / (|u| |v|); avoids the cancellation in sqrt(1 - cos^2)
        wedge = math.sqrt(sum(abs(u[i] * v[j] - u[j] * v[i]) ** 2
                              for i in range(3) for j in range(i + 1, 3)))
        return wedge / (nu * nv)

    def equals(self, other: CP5Param, tol: float | None = None) -> bool:
        if self.field.exact and other.field.exact:
            a, b = self.c, other.c
            return all(a[i] * b[j] == a[j] * b[i] for i in range(3) for j in range(i + 1, 3))
        return self.chordal(other) <= (self.field.eps if tol is None else tol)

    def normalized(self) -> tuple:
        """Divide by the last nonzero coordinate."""
        f = self.field
        s = max(abs(x) for x in self.c)
        k = max(i for i, x in enumerate(self.c) if not f.is_zero(x, s))
        return tuple(x / self.c[k] for x in self.c)

    def to_json(self) -> list:
        if self.field.exact:
            return [str(x) for x in self.normalized()]
        out = []
        xs = [complex(x) for x in self.normalized()]
        tol = self.field.eps * max(abs(x) for x in xs)
        for x in xs:
            re = 0.0 if abs(x.real) <= tol else x.real
            im = 0.0 if abs(x.imag) <= tol else x.imag
            out.append(re if im == 0.0 else [re, im])
        return out


# action and invariants --------------------------------------------------------------

def symmetric_square_act(t: TorusElement, z: CP5Point) -> CP5Point:
    return CP5Point(tuple(t.weight(J) * x for J, x in zip(PAIRS, z.z)), z.field)


def is_on_plucker_quadric(z: CP5Point) -> bool:
    z0, z1, z2, z3, z4, z5 = z.z
    q = z0 * z5 + z2 * z3 - z1 * z4
    return z.field.is_zero(q, z.scale ** 2)


def invariant_triple(z: CP5Point) -> tuple:
    """(z2 z3, z1 z4, z0 z5): each monomial has torus weight (1,1,1,1)."""
    z0, z1, z2, z3, z4, z5 = z.z
    return (z2 * z3, z1 * z4, z0 * z5)


def cp5_param(z: CP5Point):
    f = z.field
    tr = invariant_triple(z)
    if all(f.is_zero(x, z.scale ** 2) for x in tr):
        return ANY
    return CP5Param(tr, f)


@dataclass(frozen=True)
class CP5Stratum:
    vertices: frozenset
    dim: int
    param: object

    def to_json(self) -> dict:
        return {"polytope_vertices": [pair_label(J) for J in sorted(self.vertices)],
                "polytope_dim": self.dim,
                "param": self.param.to_json()}


def cp5_stratum(z: CP5Point) -> CP5Stratum:
    """Moment polytope (any nonempty vertex subset occurs) and orbit parameter."""
    v = z.support()
    return CP5Stratum(v, affine_dim(v), cp5_param(z))


def chart0_param(a) -> tuple:
    """(c1, c2) from chart z0 = 1 coordinates a = (a1..a5), for a5 != 0."""
    a1, a2, a3, a4, a5 = a
    return (a2 * a3 / a5, a1 * a4 / a5)


def is_fixed_point(z: CP5Point, t: TorusElement) -> bool:
    return symmetric_square_act(t, z).proportional_to(z)


# named gluing assignments -------------------------------------------------------------

def _v(*labels):
    from .linalg import parse_pair

    return frozenset(PAIRS) - frozenset(parse_pair(s) for s in labels)


# Strata whose parameter is a single point of CP^2, named by missing vertices.
FIXED_PARAMS = {
    _v("13", "14"): (0, 0, 1), _v("13", "23"): (0, 0, 1),
    _v("14", "24"): (0, 0, 1), _v("23", "24"): (0, 0, 1),
    _v("13", "14", "23"): (0, 0, 1), _v("13", "14", "24"): (0, 0, 1),
    _v("13", "23", "24"): (0, 0, 1), _v("14", "23", "24"): (0, 0, 1),
    _v("13", "34"): (1, 0, 0), _v("24", "34"): (1, 0, 0), _v("13", "24", "34"): (1, 0, 0),
    _v("14", "34"): (0, 1, 0), _v("23", "34"): (0, 1, 0), _v("14", "23", "34"): (0, 1, 0),
    _v("12", "13"): (1, 0, 0), _v("12", "24"): (1, 0, 0), _v("12", "13", "24"): (1, 0, 0),
    _v("12", "23"): (0, 1, 0), _v("12", "14"): (0, 1, 0), _v("12", "14", "23"): (0, 1, 0),
}


# degeneration -----------------------------------------------------------------------

@dataclass(frozen=True)
class CP5LimitReport:
    vertices: frozenset
    steps: int
    limit: CP5Param
    expected: object
    residual: float
    converged: bool


def cp5_degeneration_limit(zero_idx, a, max_steps: int = 30, tol: float = 1e-6) -> CP5LimitReport:
    """Scale chart-z0 coordinates ``a[k]``, k in ``zero_idx``, by 2^-n and track the parameter.

    The expected value is the parameter of the limit point itself.
    """
    prev = last = None
    steps = 0
    converged = False
    for n in range(1, max_steps + 1):
        t = 2.0 ** (-n)
        an = [x * t if k in zero_idx else x for k, x in enumerate(a)]
        last = cp5_param(CP5Point((1, *an)))
        steps = n
        if prev is not None and last.chordal(prev) < tol:
            converged = True
            break
        prev = last
    lim_pt = CP5Point((1, *[0 if k in zero_idx else x for k, x in enumerate(a)]))
    expected = cp5_param(lim_pt)
    residual = last.chordal(expected) if expected is not ANY else 0.0
    return CP5LimitReport(lim_pt.support(), steps, last, expected, residual, converged)


# the induced embedding of orbit spaces -------------------------------------------------

def induced_orbit_space_embedding(c: ProjectiveParam) -> CP5Param:
    """(c : d) -> (c : d : d - c); on the affine line (c : 1) -> (c : 1 : 1 - c)."""
    return CP5Param((c.c, c.d, c.d - c.c), c.field)


def embedding_oracle(c) -> CP5Param:
    """Plücker image of the chart-M_12 point a = (c, 1, 1, 1), read on chart z0 = 1."""
    X = frame_from_chart(ChartCoords((1, 2), (c, 1, 1, 1), COMPLEX))
    z = plucker_coordinates(X).p
    a = tuple(x / z[0] for x in z[1:])
    c1, c2 = chart0_param(a)
    return CP5Param((c1, c2, 1))


def embedding_candidates(c) -> dict:
    """The two closed forms on record for the induced embedding."""
    return {
        "(1/(1-c) : c/(1-c) : 1/c)": CP5Param((1 / (1 - c), c / (1 - c), 1 / c)),
        "(c : 1 : 1-c)": CP5Param((c, 1, 1 - c)),
    }


@dataclass(frozen=True)
class EmbeddingFormulaReport:
    samples: int
    max_residual: float          # implementation vs oracle
    candidate_residuals: dict    # candidate label -> max residual vs oracle
    selected: str | None

    def to_json(self) -> dict:
        return {"samples": self.samples, "max_residual": self.max_residual,
                "candidate_residuals": self.candidate_residuals, "selected": self.selected}


def embedding_formula_report(rng, samples: int = 20, tol: float = 1e-9) -> EmbeddingFormulaReport:
    worst = 0.0
    cand: dict[str, float] = {}
    for _ in range(samples):
        while True:
            c = complex(rng.standard_normal(), rng.standard_normal())
            if abs(c) > 1e-3 and abs(c - 1) > 1e-3:
                break
        ref = embedding_oracle(c)
        worst = max(worst, induced_orbit_space_embedding(ProjectiveParam(c, 1)).chordal(ref))
        for label, val in embedding_candidates(c).items():
            cand[label] = max(cand.get(label, 0.0), val.chordal(ref))
    ok = [label for label, r in cand.items() if r <= tol]
    return EmbeddingFormulaReport(samples, worst, cand, ok[0] if len(ok) == 1 else None)
