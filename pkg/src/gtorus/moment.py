"""Moment maps on G(4,2) and CP^5, the hypersimplex, and two factorizations of the moment map.

The moment map sends a point to the ``|P^J|^2``-weighted average of the
hypersimplex vertices ``delta_J``.  In exact mode every output is a tuple of
Fractions, so simplex constraints hold with no tolerance at all.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .errors import NotInChart, RankDeficient, ZeroVector
from .linalg import (
    PAIRS,
    ChartCoords,
    FramedPoint,
    PluckerVector,
    frame_from_chart,
    parse_pair,
    plucker_coordinates,
)

MOMENT_EPS = 1e-9


def delta(J) -> tuple[int, int, int, int]:
    i, j = parse_pair(J)
    return tuple(1 if k in (i, j) else 0 for k in range(1, 5))


@dataclass(frozen=True)
class MomentPoint:
    x: tuple

    def __iter__(self):
        return iter(self.x)

    def __getitem__(self, k):
        return self.x[k]

    def in_hypersimplex(self, eps: float = MOMENT_EPS) -> bool:
        exact = all(isinstance(v, (int, Fraction)) for v in self.x)
        tol = 0 if exact else eps
        return (all(-tol <= v <= 1 + tol for v in self.x)
                and abs(sum(self.x) - 2) <= tol)

    def to_json(self) -> list[float]:
        return [float(v) for v in self.x]

    def distance(self, other) -> float:
        return max(abs(float(a) - float(b)) for a, b in zip(self.x, other))


@dataclass(frozen=True)
class Hypersimplex:
    """The octahedron Delta_{4,2}: six vertices, twelve edges, eight facets."""

    vertices: dict = dc_field(default_factory=lambda: {J: delta(J) for J in PAIRS})

    @property
    def edges(self) -> list[tuple]:
        # Two vertices span an edge unless their index pairs are complementary.
        return [(J, K) for a, J in enumerate(PAIRS) for K in PAIRS[a + 1:]
                if set(J) & set(K)]

    @property
    def facets(self) -> list[tuple]:
        out = []
        for i in range(1, 5):
            out.append(tuple(J for J in PAIRS if i in J))       # x_i = 1
            out.append(tuple(J for J in PAIRS if i not in J))   # x_i = 0
        return out


HYPERSIMPLEX = Hypersimplex()


def _weighted_average(weights) -> MomentPoint:
    total = sum(weights)
    if total == 0:
        raise ZeroVector("all coordinates vanish")
    x = [0, 0, 0, 0]
    for w, J in zip(weights, PAIRS):
        for k in J:
            x[k - 1] += w
    return MomentPoint(tuple(v / total for v in x))


def moment_g42(p: PluckerVector) -> MomentPoint:
    return _weighted_average([p.field.abs2(x) for x in p.p])


def moment_cp5(z, field=None) -> MomentPoint:
    """Moment map of the T^4 action on CP^5 (weights x_i + x_j on z_{ij})."""
    if field is None:
        field = getattr(z, "field", None)
    coords = getattr(z, "z", z)
    if field is None:
        weights = [abs(complex(v)) ** 2 for v in coords]
    else:
        weights = [field.abs2(field.coerce(v)) for v in coords]
    if len(weights) != 6:
        raise ValueError("CP^5 points have 6 homogeneous coordinates")
    return _weighted_average(weights)


def moment_of_frame(X: FramedPoint) -> MomentPoint:
    return moment_g42(plucker_coordinates(X))


# diag(A A*^T) ------------------------------------------------------------------

def orthonormalize(A: np.ndarray) -> np.ndarray:
    """Modified Gram-Schmidt with column pivoting on a 4x2 complex array."""
    Q = np.array(A, dtype=complex)
    n = Q.shape[1]
    scale = np.abs(Q).max() or 1.0
    for k in range(n):
        norms = np.linalg.norm(Q[:, k:], axis=0)
        piv = k + int(np.argmax(norms))
        if norms[piv - k] <= 1e-12 * scale:
            raise RankDeficient("frame columns are linearly dependent")
        Q[:, [k, piv]] = Q[:, [piv, k]]
        Q[:, k] /= np.linalg.norm(Q[:, k])
        for j in range(k + 1, n):
            Q[:, j] -= np.vdot(Q[:, k], Q[:, j]) * Q[:, k]
    return Q


def diag_projection(X: FramedPoint) -> MomentPoint:
    """Diagonal of F(A) = A (A*)^T for an orthonormal frame A of ``X``.

    Exact fields use the orthogonal projector A (A*A)^{-1} A*, which has the
    same diagonal and needs no square roots.
    """
    f = X.field
    if f.exact:
        return _diag_projector_exact(X)
    A = orthonormalize(X.to_complex_array())
    F = A @ A.conj().T
    return MomentPoint(tuple(float(v) for v in np.real(np.diag(F))))


def _diag_projector_exact(X: FramedPoint) -> MomentPoint:
    f = X.field
    rows = X.rows
    # Gram matrix G = A* A (2x2 Hermitian)
    g = [[sum((f.conj(r[a]) * r[b] for r in rows), f.zero) for b in range(2)] for a in range(2)]
    det = g[0][0] * g[1][1] - g[0][1] * g[1][0]
    if det == 0:
        raise RankDeficient("frame columns are linearly dependent")
    ginv = [[g[1][1] / det, -g[0][1] / det], [-g[1][0] / det, g[0][0] / det]]
    out = []
    for r in rows:
        v = f.zero
        for a in range(2):
            for b in range(2):
                v = v + r[a] * ginv[a][b] * f.conj(r[b])
        out.append(v.re if hasattr(v, "re") else v)
    return MomentPoint(tuple(out))


# cone coordinates ----------------------------------------------------------------

CONE_WEIGHTS = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, 1, 1))


@dataclass(frozen=True)
class ConeCoordsReport:
    chart: tuple
    weights: tuple
    cone_point: tuple       # mu_12(z) = gamma(xi(z)) in the weight cone
    moment: MomentPoint     # psi o mu_12 o phi
    residual: float


def _weyl_permutation(J) -> tuple[int, int, int, int]:
    """A permutation sigma with sigma({1,2}) = J, sigma({3,4}) = complement."""
    J = parse_pair(J)
    rest = tuple(i for i in range(1, 5) if i not in J)
    return J + rest


def cone_factorization_check(chart, a: ChartCoords) -> ConeCoordsReport:
    """Evaluate the cone-coordinate factorization of the moment map in a chart.

    The chart-``M_12`` construction is transported to ``M_J`` by permuting the
    standard basis so that ``J`` becomes ``{1, 2}``.
    """
    J = parse_pair(chart)
    if a.chart != J:
        raise NotInChart(f"coordinates belong to chart {a.chart}, not {J}")
    X = frame_from_chart(a)
    sigma = _weyl_permutation(J)
    Y = X.permute_rows(sigma)
    q = plucker_coordinates(Y)
    q12 = complex(q[(1, 2)])
    if abs(q12) == 0:
        raise NotInChart("point not in chart")
    # cone coordinates: z_j weights V_j = delta_pq - delta_12 (pq = 13, 14, 23, 24)
    z = [complex(q[J2]) / q12 for J2 in ((1, 3), (1, 4), (2, 3), (2, 4))]
    D = z[0] * z[3] - z[1] * z[2]
    az = [abs(v) ** 2 for v in z]
    aD = abs(D) ** 2
    kappa = 1.0 / math.sqrt(1.0 + sum(az) + aD)
    xi = (kappa * math.sqrt(az[0]),
          kappa * math.sqrt(az[1] + aD),
          kappa * math.sqrt(az[2] + aD),
          kappa * math.sqrt(az[3]))
    cone_point = tuple(sum(x * w[k] for x, w in zip(xi, CONE_WEIGHTS)) for k in range(3))
    # psi o gamma = eta: delta_12 + sum x_j^2 V_j
    d12 = np.array(delta((1, 2)), dtype=float)
    V = [np.array(delta(K), dtype=float) - d12 for K in ((1, 3), (1, 4), (2, 3), (2, 4))]
    eta = d12 + sum(x * x * v for x, v in zip(xi, V))
    # undo the permutation: coordinate sigma(k) of mu(X) is coordinate k of mu(Y)
    m = [0.0] * 4
    for k, s in enumerate(sigma):
        m[s - 1] = float(eta[k])
    direct = moment_g42(plucker_coordinates(X))
    residual = max(abs(u - float(v)) for u, v in zip(m, direct))
    return ConeCoordsReport(J, CONE_WEIGHTS, cone_point, MomentPoint(tuple(m)), residual)
