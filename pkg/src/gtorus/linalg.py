"""Frames, Plücker coordinates, the six affine charts and torus actions on G(4,2).

Conventions (fixed across the package):

* rows and indices are 1-based, index pairs are sorted tuples ``(i, j)``;
* Plücker coordinates are ordered lexicographically 12, 13, 14, 23, 24, 34,
  which is also the ``z0 .. z5`` order of homogeneous coordinates on CP^5;
* chart ``M_J`` coordinates ``a = (a1, a2, a3, a4)`` are read from the
  normalized frame whose ``J`` rows form the identity: with ``i1 < i2`` the
  remaining rows, row ``i1`` is ``(a1, a3)`` and row ``i2`` is ``(a2, a4)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .errors import NotInChart, RankDeficient
from .scalars import COMPLEX, Field

PAIRS: tuple[tuple[int, int], ...] = tuple(combinations(range(1, 5), 2))
PAIR_INDEX = {J: k for k, J in enumerate(PAIRS)}
CHARTS = PAIRS


def pair_label(J) -> str:
    return f"{J[0]}{J[1]}"


def parse_pair(s) -> tuple[int, int]:
    """Parse ``"13"``, ``"1,3"``, ``(3, 1)`` ... into a sorted index pair."""
    if isinstance(s, str):
        digits = [int(ch) for ch in s if ch.isdigit()]
    else:
        digits = [int(v) for v in s]
    if len(digits) != 2 or digits[0] == digits[1] or not all(1 <= d <= 4 for d in digits):
        raise ValueError(f"not a 2-subset of {{1,2,3,4}}: {s!r}")
    return tuple(sorted(digits))


def complement(J) -> tuple[int, int]:
    return tuple(i for i in range(1, 5) if i not in J)


def _sign_pair(i: int, j: int) -> int:
    return 1 if i < j else -1


@dataclass(frozen=True)
class FramedPoint:
    """A 4x2 frame; represents the column span in G(4,2)."""

    rows: tuple
    field: Field = COMPLEX

    def __post_init__(self):
        if len(self.rows) != 4 or any(len(r) != 2 for r in self.rows):
            raise ValueError("a frame needs 4 rows of 2 entries")
        rows = tuple(tuple(self.field.coerce(x) for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: Field = COMPLEX) -> FramedPoint:
        return cls(tuple(tuple(r) for r in rows), field)

    def entry(self, i: int, k: int):
        """1-based row ``i``, column ``k``."""
        return self.rows[i - 1][k - 1]

    def minor(self, i: int, j: int):
        (a, b), (c, d) = self.rows[i - 1], self.rows[j - 1]
        return a * d - b * c

    def right_multiply(self, g) -> FramedPoint:
        (g11, g12), (g21, g22) = g
        f = self.field
        g11, g12, g21, g22 = (f.coerce(x) for x in (g11, g12, g21, g22))
        rows = tuple((x * g11 + y * g21, x * g12 + y * g22) for x, y in self.rows)
        return FramedPoint(rows, f)

    def permute_rows(self, sigma) -> FramedPoint:
        """Row ``k`` of the result is row ``sigma[k]`` (1-based) of ``self``."""
        return FramedPoint(tuple(self.rows[s - 1] for s in sigma), self.field)

    def to_complex_array(self):
        import numpy as np

        return np.array([[complex(x) for x in r] for r in self.rows], dtype=complex)


@dataclass(frozen=True)
class PluckerVector:
    p: tuple
    field: Field = COMPLEX

    def __post_init__(self):
        if len(self.p) != 6:
            raise ValueError("a Plücker vector has 6 entries")
        object.__setattr__(self, "p", tuple(self.field.coerce(x) for x in self.p))

    def __getitem__(self, J):
        if isinstance(J, int):
            return self.p[J]
        return self.p[PAIR_INDEX[parse_pair(J)]]

    def __iter__(self):
        return iter(self.p)

    @property
    def scale(self) -> float:
        return max(abs(x) for x in self.p)

    def is_zero_at(self, J) -> bool:
        return self.field.is_zero(self[J], self.scale)

    def support(self) -> frozenset:
        """Index pairs with a nonzero coordinate."""
        s = self.scale
        return frozenset(J for J, x in zip(PAIRS, self.p) if not self.field.is_zero(x, s))

    def relation(self):
        """Value of p12 p34 - p13 p24 + p14 p23 (zero on the Grassmannian)."""
        p12, p13, p14, p23, p24, p34 = self.p
        return p12 * p34 - p13 * p24 + p14 * p23

    def norm2(self):
        out = self.field.abs2(self.p[0])
        for x in self.p[1:]:
            out = out + self.field.abs2(x)
        return out

    def proportional_to(self, other: PluckerVector) -> bool:
        """Projective equality: all 2x2 cross products vanish."""
        f = self.field
        scale = self.scale * other.scale
        return all(f.is_zero(a * d - b * c, scale)
                   for (a, b), (c, d) in combinations(zip(self.p, other.p), 2))


@dataclass(frozen=True)
class ChartCoords:
    chart: tuple
    a: tuple
    field: Field = COMPLEX

    def __post_init__(self):
        object.__setattr__(self, "chart", parse_pair(self.chart))
        if len(self.a) != 4:
            raise ValueError("chart coordinates have 4 entries")
        object.__setattr__(self, "a", tuple(self.field.coerce(x) for x in self.a))


@dataclass(frozen=True)
class TorusElement:
    t: tuple
    field: Field = COMPLEX
    compact: bool = False

    def __post_init__(self):
        if len(self.t) != 4:
            raise ValueError("a torus element has 4 entries")
        f = self.field
        t = tuple(f.coerce(x) for x in self.t)
        object.__setattr__(self, "t", t)
        if any(f.is_zero(x) for x in t):
            raise ValueError("torus entries must be nonzero")
        if self.compact:
            for x in t:
                n = f.abs2(x)
                if (n != 1) if f.exact else abs(n - 1.0) > f.eps:
                    raise ValueError(f"compact torus entry {x} is not unimodular")

    def weight(self, J):
        i, j = J
        return self.t[i - 1] * self.t[j - 1]


# operations -----------------------------------------------------------------

def plucker_coordinates(X: FramedPoint) -> PluckerVector:
    """The six 2x2 row minors, lexicographic order."""
    pv = PluckerVector(tuple(X.minor(i, j) for i, j in PAIRS), X.field)
    f = X.field
    if all(x == 0 for x in pv.p) or (not f.exact and pv.scale <= _entry_scale(X) ** 2 * f.eps):
        raise RankDeficient("frame has rank < 2: all 2x2 minors vanish")
    return pv


def _entry_scale(X: FramedPoint) -> float:
    return max((abs(x) for r in X.rows for x in r), default=0.0) or 1.0


def torus_act(t: TorusElement, X: FramedPoint) -> FramedPoint:
    rows = tuple((ti * x, ti * y) for ti, (x, y) in zip(t.t, X.rows))
    return FramedPoint(rows, X.field)


def frame_from_chart(c: ChartCoords) -> FramedPoint:
    """Normalized frame of the chart coordinates (``J`` rows = identity)."""
    f = c.field
    J = c.chart
    i1, i2 = complement(J)
    a1, a2, a3, a4 = c.a
    rows = [None] * 4
    rows[J[0] - 1] = (f.one, f.zero)
    rows[J[1] - 1] = (f.zero, f.one)
    rows[i1 - 1] = (a1, a3)
    rows[i2 - 1] = (a2, a4)
    return FramedPoint(tuple(rows), f)


def to_chart(X: FramedPoint, J) -> ChartCoords:
    """Coordinates of ``X`` in chart ``M_J`` (right-multiply by the inverse J-block)."""
    J = parse_pair(J)
    f = X.field
    det = X.minor(*J)
    p = plucker_coordinates(X)
    if f.is_zero(det, p.scale):
        raise NotInChart(f"P^{pair_label(J)} vanishes; point not in chart M_{pair_label(J)}")
    (b11, b12), (b21, b22) = X.rows[J[0] - 1], X.rows[J[1] - 1]
    inv = ((b22 / det, -b12 / det), (-b21 / det, b11 / det))
    i1, i2 = complement(J)
    n1 = _row_times(X.rows[i1 - 1], inv)
    n2 = _row_times(X.rows[i2 - 1], inv)
    return ChartCoords(J, (n1[0], n2[0], n1[1], n2[1]), f)


def _row_times(r, m):
    x, y = r
    return (x * m[0][0] + y * m[1][0], x * m[0][1] + y * m[1][1])


def chart_transition(c: ChartCoords, to) -> ChartCoords:
    return to_chart(frame_from_chart(c), to)


def chart_plucker_ratios(J):
    """Express chart-``M_J`` coordinates through Plücker coordinates.

    Returns four ``(sign, pair)`` items: ``a_k = sign * P^pair / P^J``.
    Entry ``(i, 1)`` of the normalized frame is ``det(rows i, j2)/P^J`` and
    entry ``(i, 2)`` is ``det(rows j1, i)/P^J`` (Cramer's rule).
    """
    j1, j2 = parse_pair(J)
    i1, i2 = complement((j1, j2))

    def item(r, s):
        return (_sign_pair(r, s), tuple(sorted((r, s))))

    return (item(i1, j2), item(i2, j2), item(j1, i1), item(j1, i2))


# sampling ---------------------------------------------------------------------

def random_frame(rng, field: Field = COMPLEX, bound: int = 10) -> FramedPoint:
    """Random full-rank frame (rank rejection)."""
    while True:
        rows = tuple((field.random(rng, bound), field.random(rng, bound)) for _ in range(4))
        X = FramedPoint(rows, field)
        try:
            plucker_coordinates(X)
        except RankDeficient:
            continue
        return X


def random_torus(rng, field: Field = COMPLEX, compact: bool = False, bound: int = 5) -> TorusElement:
    if compact:
        t = tuple(field.random_unit(rng) for _ in range(4))
    else:
        t = tuple(field.random_nonzero(rng, bound) for _ in range(4))
    return TorusElement(t, field, compact)


def random_gl2(rng, field: Field = COMPLEX, bound: int = 5):
    while True:
        g = tuple((field.random(rng, bound), field.random(rng, bound)) for _ in range(2))
        det = g[0][0] * g[1][1] - g[0][1] * g[1][0]
        if not field.is_zero(det):
            return g
