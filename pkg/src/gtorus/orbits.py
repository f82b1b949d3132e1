"""Torus orbits on G(4,2): chart descriptions, the cross-ratio parameter, closures, local models.

Writing ``A = p12 p34``, ``B = p13 p24``, ``C = p14 p23`` the Plücker relation
reads ``A - B + C = 0``.  Each monomial has torus weight ``(1,1,1,1)``, so the
projective triple ``(A : B : C)`` is constant on algebraic-torus orbits.  The
chart-``M_12`` parameter ``c = a1 a4 / (a2 a3)`` is ``C / B``.  Every other
chart parameter is a ratio of two of these products, which gives all chart
transitions at once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, product

from .linalg import (
    PAIRS,
    ChartCoords,
    FramedPoint,
    PluckerVector,
    chart_plucker_ratios,
    complement,
    frame_from_chart,
    parse_pair,
    plucker_coordinates,
)
from .polytope import non_simple_vertices
from .scalars import COMPLEX, Field
from .strata import (
    Kind,
    Stratum,
    real_stabilizer,
    stabilizer_subtorus,
    stratum_of,
)


class _Any:
    """The whole parameter line: low-dimensional orbits touch every parameter value."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "ANY"

    def to_json(self):
        return "any"


ANY = _Any()
INDETERMINATE = ANY


@dataclass(frozen=True)
class ProjectiveParam:
    """A point (c : d) of CP^1 (RP^1 for real scalars)."""

    c: object
    d: object
    field: Field = COMPLEX

    def __post_init__(self):
        f = self.field
        c, d = f.coerce(self.c), f.coerce(self.d)
        if c == 0 and d == 0:
            raise ValueError("(0 : 0) is not a projective point")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    @classmethod
    def affine(cls, c, field: Field = COMPLEX) -> ProjectiveParam:
        return cls(c, 1, field)

    @classmethod
    def infinity(cls, field: Field = COMPLEX) -> ProjectiveParam:
        return cls(1, 0, field)

    @property
    def is_infinite(self) -> bool:
        return self.field.is_zero(self.d, max(abs(self.c), abs(self.d)))

    def value(self):
        """Affine value c/d, or None at infinity."""
        return None if self.is_infinite else self.c / self.d

    def normalized(self) -> ProjectiveParam:
        if self.is_infinite:
            return ProjectiveParam(1, 0, self.field)
        return ProjectiveParam(self.c / self.d, 1, self.field)

    def chordal(self, other: ProjectiveParam) -> float:
        """Chordal (Fubini-Study chord) distance on CP^1, in [0, 1]."""
        a, b = complex(self.c), complex(self.d)
        x, y = complex(other.c), complex(other.d)
        num = abs(a * y - b * x)
        den = math.hypot(abs(a), abs(b)) * math.hypot(abs(x), abs(y))
        return num / den

    def equals(self, other: ProjectiveParam, tol: float | None = None) -> bool:
        if self.field.exact and other.field.exact:
            return self.c * other.d == self.d * other.c
        return self.chordal(other) <= (self.field.eps if tol is None else tol)

    def to_json(self) -> str:
        if self.is_infinite:
            return "inf"
        v = self.c / self.d
        if self.field.exact:
            return str(v)
        v = complex(v)
        v = complex(v.real + 0.0, v.imag + 0.0)
        if abs(v.imag) <= self.field.eps * max(1.0, abs(v)):
            return f"{v.real:.12g}"
        return f"{v.real:.12g}{v.imag:+.12g}i"

    def __repr__(self):
        return f"({self.c} : {self.d})"


@dataclass(frozen=True)
class OrbitDescriptor:
    kind: str            # FixedPoint | CStarI | Hypersurface
    chart: tuple
    I: frozenset = frozenset()
    c: ProjectiveParam | None = None

    @property
    def dim_real(self) -> int:
        if self.kind == "Hypersurface":
            return 6
        return 2 * len(self.I)

    def to_json(self) -> dict:
        out = {"kind": self.kind, "chart": f"{self.chart[0]}{self.chart[1]}",
               "dim": self.dim_real}
        if self.kind == "CStarI":
            out["I"] = sorted(self.I)
        if self.c is not None:
            out["c"] = self.c.to_json()
        return out


def cstar(I, chart=(1, 2)) -> OrbitDescriptor:
    I = frozenset(I)
    if not I:
        return OrbitDescriptor("FixedPoint", chart)
    return OrbitDescriptor("CStarI", chart, I)


# orbit in a chart ------------------------------------------------------------------

def orbit_descriptor(a: ChartCoords) -> OrbitDescriptor:
    f = a.field
    scale = max([1.0] + [abs(x) for x in a.a])
    I = frozenset(k + 1 for k, x in enumerate(a.a) if not f.is_zero(x, scale))
    if len(I) < 4:
        return cstar(I, a.chart)
    a1, a2, a3, a4 = a.a
    return OrbitDescriptor("Hypersurface", a.chart, I, ProjectiveParam(a1 * a4, a2 * a3, f))


# cross-ratio ---------------------------------------------------------------------

# p_J p_{J^c} for the three antipodal pairs; A = p12 p34, B = p13 p24, C = p14 p23.
PRODUCTS = {"A": ((1, 2), (3, 4)), "B": ((1, 3), (2, 4)), "C": ((1, 4), (2, 3))}


def plucker_products(p: PluckerVector) -> tuple:
    return tuple(p[J] * p[K] for J, K in PRODUCTS.values())


def _product_name(J, K) -> str:
    key = tuple(sorted((parse_pair(J), parse_pair(K))))
    for name, pair in PRODUCTS.items():
        if tuple(sorted(pair)) == key:
            return name
    raise ValueError(f"{J} and {K} are not complementary")


def chart_param_form(J) -> tuple[int, str, str]:
    """The chart-``M_J`` parameter a1 a4/(a2 a3) as ``sign * num / den`` with num, den in {A, B, C}."""
    (s1, q1), (s2, q2), (s3, q3), (s4, q4) = chart_plucker_ratios(J)
    return s1 * s4 * s2 * s3, _product_name(q1, q4), _product_name(q2, q3)


def _param_from_products(prods, J, field: Field, scale2: float):
    sign, num, den = chart_param_form(J)
    vals = dict(zip("ABC", prods))
    u, v = sign * vals[num], vals[den]
    if field.is_zero(u, scale2) and field.is_zero(v, scale2):
        return ANY
    return ProjectiveParam(u, v, field)


def chart_parameter(X: FramedPoint, J=(1, 2)):
    """Orbit parameter as read in chart ``M_J``; ANY when both products vanish."""
    p = plucker_coordinates(X)
    return _param_from_products(plucker_products(p), parse_pair(J), X.field, p.scale ** 2)


def cross_ratio(X: FramedPoint):
    """The chart-``M_12`` parameter (p14 p23 : p13 p24), extended to the whole Grassmannian."""
    return chart_parameter(X, (1, 2))


def chart_param_transition(c: ProjectiveParam, src, dst) -> ProjectiveParam:
    """Rewrite a chart-``src`` parameter as a chart-``dst`` parameter (total projective map)."""
    src, dst = parse_pair(src), parse_pair(dst)
    f = c.field
    sign, num, den = chart_param_form(src)
    vals = {num: sign * c.c, den: c.d}
    (missing,) = set("ABC") - {num, den}
    # A - B + C = 0
    if missing == "A":
        vals["A"] = vals["B"] - vals["C"]
    elif missing == "B":
        vals["B"] = vals["A"] + vals["C"]
    else:
        vals["C"] = vals["B"] - vals["A"]
    s2, n2, d2 = chart_param_form(dst)
    return ProjectiveParam(s2 * vals[n2], vals[d2], f)


# boundary parameters -----------------------------------------------------------------

_BOUNDARY_BY_MISSING = {(1, 4): 0, (2, 3): 0, (1, 3): "inf", (2, 4): "inf", (1, 2): 1, (3, 4): 1}


def boundary_parameter(stratum: Stratum, field: Field = COMPLEX):
    """Main-stratum parameter value that a non-main stratum is glued to."""
    kind = stratum.polytope.kind
    if kind is Kind.OCTAHEDRON:
        raise ValueError("the main stratum is a family; it has no single boundary parameter")
    if kind in (Kind.PYRAMID, Kind.SQUARE):
        missing = sorted(stratum.pattern.zeros)
        v = _BOUNDARY_BY_MISSING[missing[0]]
        return ProjectiveParam.infinity(field) if v == "inf" else ProjectiveParam.affine(v, field)
    return ANY


def degeneration_chart(stratum: Stratum):
    """A chart and the chart coordinates that vanish on the stratum (pyramids and squares)."""
    zeros = sorted(stratum.pattern.zeros)
    K = zeros[0]
    for J in PAIRS:
        if J in (K, complement(K)):
            continue
        ratios = chart_plucker_ratios(J)
        idx = [k for k, (_, q) in enumerate(ratios) if q in zeros]
        if len(idx) == len(zeros):
            return J, idx
    raise ValueError(f"no chart exhibits stratum {stratum.name} as coordinate zeros")


@dataclass(frozen=True)
class LimitReport:
    stratum: str
    chart: tuple
    steps: int
    limit: object
    expected: object
    residual: float
    converged: bool


def degeneration_limit(stratum: Stratum, a, max_steps: int = 30, tol: float = 1e-6) -> LimitReport:
    """Scale the vanishing chart coordinates of a main-stratum point by 2^-n, track the M_12 parameter."""
    J, idx = degeneration_chart(stratum)
    prev = None
    last = None
    n_used = 0
    converged = False
    for n in range(1, max_steps + 1):
        t = 2.0 ** (-n)
        an = tuple(x * t if k in idx else x for k, x in enumerate(a))
        X = frame_from_chart(ChartCoords(J, an, COMPLEX))
        last = cross_ratio(X)
        n_used = n
        if prev is not None and last.chordal(prev) < tol:
            converged = True
            break
        prev = last
    expected = boundary_parameter(stratum)
    return LimitReport(stratum.name, J, n_used, last, expected,
                       last.chordal(expected), converged)


# closures ------------------------------------------------------------------------

CLOSURE_MODELS = {
    Kind.OCTAHEDRON: "SingularToric6_6pts",
    Kind.PYRAMID: "SingularToric6_1pt",
    Kind.TRIANGLE: "CP2",
    Kind.SQUARE: "CP1xCP1",
    Kind.EDGE: "CP1",
    Kind.VERTEX: "Point",
}


@dataclass(frozen=True)
class ClosureReport:
    polytope: object
    model: str
    singular_point_count: int

    def to_json(self) -> dict:
        return {"polytope": self.polytope.name, "model": self.model,
                "singular_points": self.singular_point_count}


def classify_closure(stratum: Stratum) -> ClosureReport:
    """Orbit-closure type; singular points are the non-simple vertices of the polytope."""
    P = stratum.polytope
    return ClosureReport(P, CLOSURE_MODELS[P.kind], len(non_simple_vertices(P.vertices)))


def closure_boundary(desc: OrbitDescriptor) -> list[OrbitDescriptor]:
    """Torus orbits in the chart closure of ``desc`` other than ``desc`` itself.

    A coordinate orbit of support I lies in the closure of the hypersurface
    a1 a4 = c a2 a3 (c != 0, inf) iff both monomials vanish on it, i.e. I
    contains neither {1,4} nor {2,3}.
    """
    if desc.kind == "FixedPoint":
        return []
    if desc.kind == "CStarI":
        subs = [frozenset(s) for k in range(len(desc.I) - 1, 0, -1)
                for s in combinations(sorted(desc.I), k)]
    else:
        subs = [frozenset(s) for k in (3, 2, 1) for s in combinations((1, 2, 3, 4), k)
                if not {1, 4} <= set(s) and not {2, 3} <= set(s)]
    return [cstar(s, desc.chart) for s in subs] + [cstar((), desc.chart)]


def closure_boundary_by_subgroups(a, bound: int = 3, steps: int = 40) -> set[frozenset]:
    """Supports of limits lim_{s->0} lambda(s) . a over one-parameter subgroups lambda.

    On chart-``M_12`` coordinates the torus acts with exponents
    e = (w1, w2, w3, w2 + w3 - w1); limits exist when e >= 0.  The limit is
    evaluated numerically at s = 2^-steps and its support read off.
    """
    out = set()
    s = 2.0 ** (-steps)
    for w in product(range(0, bound + 1), repeat=3):
        e = (w[0], w[1], w[2], w[1] + w[2] - w[0])
        if min(e) < 0 or max(e) == 0:
            continue
        lim = [x * s ** k for x, k in zip(a, e)]
        out.add(frozenset(i + 1 for i, v in enumerate(lim) if abs(v) > 1e-9))
    return out


# local models -----------------------------------------------------------------------

COMPLEX_LOCAL = {3: "Smooth", 2: "D2xConeS2", 1: "D1xConeS5modT2", 0: "ConeS7modT3"}
REAL_LOCAL = {8: "Smooth", 4: "D2xConeRP1", 2: "D1xConeS2modZ2sq", 1: "ConeS3modZ2cube"}


@dataclass(frozen=True)
class LocalModelReport:
    orbit_dim: int
    model: str
    stabilizer_dim: int

    def to_json(self) -> dict:
        return {"orbit_dim": self.orbit_dim, "model": self.model,
                "stabilizer_dim": self.stabilizer_dim}


def local_model(X: FramedPoint) -> LocalModelReport:
    """Neighbourhood type of the orbit-space point of X, keyed by the stabilizer."""
    st = stratum_of(X)
    if X.field.real:
        # orbit of the effective Z_2^3 action has 8 / |stabilizer mod diagonal| points
        orbit = 16 // len(real_stabilizer(st.pattern))
        k = orbit.bit_length() - 1
        return LocalModelReport(k, REAL_LOCAL[orbit], 3 - k)
    stab = stabilizer_subtorus(st.pattern, effective=True)
    k = 3 - stab.dim
    return LocalModelReport(k, COMPLEX_LOCAL[k], stab.dim)

