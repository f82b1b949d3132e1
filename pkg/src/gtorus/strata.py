"""Zero-pattern stratification of G(4,2).

A point's zero pattern (which Plücker coordinates vanish) fixes the moment
polytope of its algebraic-torus orbit closure.  Exactly 36 patterns occur;
the table below lists them by kind and is cross-checked against explicit
witness frames and against an exhaustive small-integer search in the tests.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

from .errors import NotAdmissible, RankDeficient, UnknownStratum
from .intlinalg import integer_kernel, lattice_basis
from .linalg import (
    PAIRS,
    FramedPoint,
    complement,
    pair_label,
    parse_pair,
    plucker_coordinates,
    random_frame,
    random_gl2,
    random_torus,
    torus_act,
)
from .moment import delta
from .scalars import COMPLEX, Field


class Kind(enum.Enum):
    OCTAHEDRON = "Octahedron"
    PYRAMID = "Pyramid"
    SQUARE = "Square"
    TRIANGLE = "Triangle"
    EDGE = "Edge"
    VERTEX = "Vertex"


KIND_DIM = {Kind.OCTAHEDRON: 3, Kind.PYRAMID: 3, Kind.SQUARE: 2,
            Kind.TRIANGLE: 2, Kind.EDGE: 1, Kind.VERTEX: 0}

ALL = frozenset(PAIRS)
ANTIPODAL = tuple((J, complement(J)) for J in PAIRS if J < complement(J))


def _fs(*labels) -> frozenset:
    return frozenset(parse_pair(s) for s in labels)


# The admissible vertex sets, grouped by kind.
_TRIANGLES = tuple(_fs(*t) for t in (
    ("12", "13", "14"), ("12", "13", "23"), ("13", "14", "34"), ("13", "23", "34"),
    ("12", "14", "24"), ("12", "23", "24"), ("14", "24", "34"), ("23", "24", "34"),
))
_TABLE: dict[frozenset, Kind] = {ALL: Kind.OCTAHEDRON}
_TABLE.update({ALL - {J}: Kind.PYRAMID for J in PAIRS})
_TABLE.update({ALL - {J, K}: Kind.SQUARE for J, K in ANTIPODAL})
_TABLE.update({T: Kind.TRIANGLE for T in _TRIANGLES})
_TABLE.update({frozenset((J, K)): Kind.EDGE for J, K in combinations(PAIRS, 2)
               if K != complement(J)})
_TABLE.update({frozenset((J,)): Kind.VERTEX for J in PAIRS})


@dataclass(frozen=True)
class ZeroPattern:
    """The set of index pairs with nonzero Plücker coordinate."""

    nonzero: frozenset

    def __post_init__(self):
        nz = frozenset(parse_pair(J) for J in self.nonzero)
        if not nz:
            raise NotAdmissible("empty pattern")
        object.__setattr__(self, "nonzero", nz)

    @property
    def zeros(self) -> frozenset:
        return ALL - self.nonzero

    def labels(self) -> list[str]:
        return [pair_label(J) for J in sorted(self.nonzero)]


@dataclass(frozen=True)
class AdmissiblePolytope:
    vertices: frozenset
    kind: Kind

    @property
    def dim(self) -> int:
        return KIND_DIM[self.kind]

    @property
    def name(self) -> str:
        return polytope_name(self.vertices, self.kind)

    def vertex_coords(self) -> list[tuple]:
        return [delta(J) for J in sorted(self.vertices)]

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "name": self.name, "dim": self.dim,
                "vertices": [pair_label(J) for J in sorted(self.vertices)]}


def polytope_name(vertices, kind: Kind) -> str:
    """Octahedron, P<J> (pyramid without delta_J), P<J>,<K> (square), else T/E/V + vertices."""
    if kind is Kind.OCTAHEDRON:
        return "octahedron"
    missing = sorted(ALL - vertices)
    if kind in (Kind.PYRAMID, Kind.SQUARE):
        return "P" + ",".join(pair_label(J) for J in missing)
    prefix = {Kind.TRIANGLE: "T", Kind.EDGE: "E", Kind.VERTEX: "V"}[kind]
    return prefix + ",".join(pair_label(J) for J in sorted(vertices))


@dataclass(frozen=True)
class Stratum:
    pattern: ZeroPattern
    polytope: AdmissiblePolytope

    @property
    def dim_real(self) -> int:
        # The main stratum is a one-parameter family of six-dimensional orbits.
        if self.polytope.kind is Kind.OCTAHEDRON:
            return 8
        return 2 * self.polytope.dim

    @property
    def orbit_count(self) -> str:
        return "OneParameterFamily" if self.polytope.kind is Kind.OCTAHEDRON else "One"

    @property
    def name(self) -> str:
        return self.polytope.name


@dataclass(frozen=True)
class StabilizerSubtorus:
    """Identity component of a stabilizer, via the integer directions of its Lie algebra."""

    lattice_basis: tuple
    dim: int
    effective: bool = False

    def to_json(self) -> dict:
        return {"dim": self.dim, "basis": [list(v) for v in self.lattice_basis],
                "effective": self.effective}


# classification ---------------------------------------------------------------------

def admissible_table() -> dict[frozenset, Kind]:
    return dict(_TABLE)


def classify_pattern(pattern) -> AdmissiblePolytope:
    if not isinstance(pattern, ZeroPattern):
        pattern = ZeroPattern(frozenset(pattern))
    kind = _TABLE.get(pattern.nonzero)
    if kind is None:
        raise NotAdmissible(f"pattern {{{', '.join(pattern.labels())}}} does not occur on G(4,2)")
    return AdmissiblePolytope(pattern.nonzero, kind)


def pattern_of(X: FramedPoint) -> ZeroPattern:
    return ZeroPattern(plucker_coordinates(X).support())


def stratum_of(X: FramedPoint) -> Stratum:
    pat = pattern_of(X)
    return Stratum(pat, classify_pattern(pat))


def stratum_from_vertices(vertices) -> Stratum:
    pat = ZeroPattern(frozenset(vertices))
    return Stratum(pat, classify_pattern(pat))


@lru_cache(maxsize=None)
def all_strata() -> tuple:
    out = [stratum_from_vertices(v) for v in _TABLE]
    return tuple(sorted(out, key=lambda s: (-s.polytope.dim, s.polytope.kind.value,
                                            sorted(s.polytope.vertices))))


def parse_stratum_id(text: str) -> Stratum:
    """Parse ``octahedron``, ``P12``, ``P12,34``, ``T12,13,14``, ``E12,13``, ``V12`` or a vertex list."""
    s = text.strip().replace(" ", "")
    try:
        if s.lower() in ("octahedron", "main", "delta"):
            return stratum_from_vertices(ALL)
        head, body = s[0].upper(), s[1:]
        if head in "PTEV" and body:
            pairs = frozenset(parse_pair(x) for x in body.strip("{}[]").split(","))
            verts = ALL - pairs if head == "P" else pairs
            st = stratum_from_vertices(verts)
            if polytope_name(st.polytope.vertices, st.polytope.kind)[0] != head:
                raise UnknownStratum(f"{text!r} names a {st.polytope.kind.value}")
            return st
        pairs = frozenset(parse_pair(x) for x in s.strip("{}[]").split(","))
        return stratum_from_vertices(pairs)
    except (ValueError, IndexError, NotAdmissible) as exc:
        raise UnknownStratum(f"unknown stratum {text!r}: {exc}") from None


# rank function ----------------------------------------------------------------------

SUBSETS = tuple(frozenset(c) for k in range(1, 5) for c in combinations(range(1, 5), k))


def _field_rank(cols, field: Field, scale: float | None = None) -> int:
    """Rank of a list of column vectors by Gaussian elimination with max pivoting."""
    M = [list(c) for c in cols]
    if not M:
        return 0
    if scale is None:
        scale = max((abs(x) for c in M for x in c), default=0.0) or 1.0
    rank = 0
    nrows = len(M[0])
    for r in range(nrows):
        best = None
        for k in range(rank, len(M)):
            if not field.is_zero(M[k][r], scale) and (best is None or abs(M[k][r]) > abs(M[best][r])):
                best = k
        if best is None:
            continue
        M[rank], M[best] = M[best], M[rank]
        piv = M[rank][r]
        for k in range(rank + 1, len(M)):
            if M[k][r] != 0:
                f = M[k][r] / piv
                M[k] = [a - f * b for a, b in zip(M[k], M[rank])]
        rank += 1
    return rank


def _quotient_map(X: FramedPoint) -> list[list]:
    """Rows of a 2x4 matrix Y with kernel X, so Y e_j spans the image of e_j in C^4 / X."""
    f = X.field
    A = [[X.rows[i][k] for i in range(4)] for k in range(2)]  # X^T, 2x4
    scale = max((abs(x) for r in A for x in r), default=0.0) or 1.0
    pivots = []
    row = 0
    for c in range(4):
        best = max(range(row, 2), key=lambda k: abs(A[k][c]), default=None) if row < 2 else None
        if best is None or f.is_zero(A[best][c], scale):
            continue
        A[row], A[best] = A[best], A[row]
        piv = A[row][c]
        A[row] = [x / piv for x in A[row]]
        for k in range(2):
            if k != row and A[k][c] != 0:
                m = A[k][c]
                A[k] = [a - m * b for a, b in zip(A[k], A[row])]
        pivots.append(c)
        row += 1
    if len(pivots) < 2:
        raise RankDeficient("frame has rank < 2")
    free = [c for c in range(4) if c not in pivots]
    Y = []
    for fc in free:
        v = [f.zero] * 4
        v[fc] = f.one
        for r, pc in enumerate(pivots):
            v[pc] = -A[r][fc]
        Y.append(v)
    return Y


def rank_function(X: FramedPoint, J, _Y=None) -> int:
    """dim of span{pi(e_j) : j in J} for pi the projection C^4 -> C^4 / X."""
    Y = _Y if _Y is not None else _quotient_map(X)
    cols = [tuple(Y[r][j - 1] for r in range(2)) for j in sorted(J)]
    scale = max(abs(x) for r in Y for x in r)
    return _field_rank(cols, X.field, scale)


def rank_profile(X: FramedPoint) -> tuple[int, ...]:
    Y = _quotient_map(X)
    return tuple(rank_function(X, J, Y) for J in SUBSETS)


# lattice ----------------------------------------------------------------------------

@dataclass(frozen=True)
class StrataLattice:
    """Strata ordered by closure of their moment polytopes, plus the empty stratum."""

    nodes: tuple
    covers: dict  # name -> sorted names of covering strata

    def out_degree(self, name: str) -> int:
        return len(self.covers[name])

    def counts_by_dim(self) -> list[int]:
        out = [0, 0, 0, 0, 0]
        for s in self.nodes:
            out[s.polytope.dim + (1 if s.polytope.kind is Kind.OCTAHEDRON else 0)] += 1
        return out

    def to_dot(self) -> str:
        lines = ["digraph strata {", "  rankdir=BT;", '  "empty";']
        for s in self.nodes:
            lines.append(f'  "{s.name}" [label="{s.name}\\n{s.polytope.kind.value}"];')
        for s in self.nodes:
            if s.polytope.kind is Kind.VERTEX:
                lines.append(f'  "empty" -> "{s.name}";')
        for a in sorted(self.covers):
            for b in self.covers[a]:
                lines.append(f'  "{a}" -> "{b}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


@lru_cache(maxsize=None)
def strata_lattice() -> StrataLattice:
    nodes = all_strata()
    below = {s.name: {t.name for t in nodes
                      if s.polytope.vertices < t.polytope.vertices} for s in nodes}
    covers = {}
    for s in nodes:
        ups = below[s.name]
        covers[s.name] = sorted(u for u in ups
                                if not any(u in below[m] for m in ups))
    return StrataLattice(nodes, covers)


# stabilizers ------------------------------------------------------------------------

def _difference_matrix(vertices) -> list[list[int]]:
    vs = sorted(vertices)
    base = delta(vs[0])
    return [[a - b for a, b in zip(delta(J), base)] for J in vs[1:]]


def stabilizer_subtorus(pattern, effective: bool = False) -> StabilizerSubtorus:
    """Directions theta in Z^4 with <delta_J - delta_J0, theta> = 0 for all nonzero J.

    With ``effective`` the diagonal circle is divided out; directions are
    then written in coordinates theta_i - theta_4, i = 1..3.
    """
    if not isinstance(pattern, ZeroPattern):
        pattern = ZeroPattern(frozenset(pattern))
    classify_pattern(pattern)
    D = _difference_matrix(pattern.nonzero)
    basis = integer_kernel(D, ncols=4) if D else [[int(i == j) for j in range(4)] for i in range(4)]
    basis = lattice_basis(basis)
    if effective:
        img = [[v[0] - v[3], v[1] - v[3], v[2] - v[3]] for v in basis]
        basis = lattice_basis(img)
    return StabilizerSubtorus(tuple(tuple(v) for v in basis), len(basis), effective)


SIGNS = tuple(product((1, -1), repeat=4))


def real_stabilizer(pattern) -> frozenset:
    """Sign vectors s in Z_2^4 acting trivially on every point of the stratum."""
    if not isinstance(pattern, ZeroPattern):
        pattern = ZeroPattern(frozenset(pattern))
    classify_pattern(pattern)
    vs = sorted(pattern.nonzero)

    def char(s, J):
        return s[J[0] - 1] * s[J[1] - 1]

    return frozenset(s for s in SIGNS if all(char(s, J) == char(s, vs[0]) for J in vs))


def subtorus_contains(big: StabilizerSubtorus, small: StabilizerSubtorus) -> bool:
    """Whether the Lie algebra spanned by ``small`` lies in that of ``big``."""
    from .polytope import rational_rank

    b = [list(v) for v in big.lattice_basis]
    s = [list(v) for v in small.lattice_basis]
    return rational_rank(b + s) == rational_rank(b) if s else True


# witnesses and sampling -------------------------------------------------------------

def _w(*rows):
    return tuple(tuple(r) for r in rows)


# Explicit frames realizing the main stratum, each pyramid, each square and each triangle.
REFERENCE_WITNESSES: tuple = (
    (_w((1, 0), (-1, 1), (1, 1), (0, 1)), ALL),
    (_w((1, 1), (1, 1), (1, 0), (0, 1)), ALL - _fs("12")),
    (_w((1, 1), (1, 0), (1, 1), (0, 1)), ALL - _fs("13")),
    (_w((1, 1), (1, 0), (0, 1), (1, 1)), ALL - _fs("14")),
    (_w((1, 0), (1, 1), (1, 1), (0, 1)), ALL - _fs("23")),
    (_w((1, 0), (0, 1), (1, 1), (0, 1)), ALL - _fs("24")),
    (_w((1, 0), (0, 1), (1, 1), (1, 1)), ALL - _fs("34")),
    (_w((1, 0), (1, 0), (0, 1), (0, 1)), _fs("13", "14", "23", "24")),
    (_w((1, 0), (0, 1), (1, 0), (0, 1)), _fs("12", "14", "23", "34")),
    (_w((1, 0), (0, 1), (0, 1), (1, 0)), _fs("12", "13", "24", "34")),
    (_w((1, 0), (1, 0), (1, 0), (0, 1)), _fs("14", "24", "34")),
    (_w((1, 0), (1, 0), (0, 1), (1, 0)), _fs("13", "23", "34")),
    (_w((0, 1), (1, 0), (0, 1), (0, 1)), _fs("12", "23", "24")),
    (_w((0, 1), (1, 0), (1, 0), (1, 0)), _fs("12", "13", "14")),
    (_w((0, 0), (0, 1), (1, 0), (1, 1)), _fs("23", "24", "34")),
    (_w((1, 0), (0, 0), (0, 1), (1, 1)), _fs("13", "14", "34")),
    (_w((1, 0), (0, 1), (0, 0), (1, 1)), _fs("12", "14", "24")),
    (_w((1, 0), (0, 1), (1, 1), (0, 0)), _fs("12", "13", "23")),
)


def _edge_witness(J, K):
    """span(e_i, e_j + e_k) for the edge between {i,j} and {i,k}."""
    (i,) = set(J) & set(K)
    j, k = (set(J) | set(K)) - {i}
    rows = [[0, 0] for _ in range(4)]
    rows[i - 1][0] = 1
    rows[j - 1][1] = 1
    rows[k - 1][1] = 1
    return _w(*rows)


def _vertex_witness(J):
    rows = [[0, 0] for _ in range(4)]
    rows[J[0] - 1][0] = 1
    rows[J[1] - 1][1] = 1
    return _w(*rows)


def witness_frames() -> dict[frozenset, tuple]:
    """One integer frame per admissible vertex set."""
    out = {v: rows for rows, v in REFERENCE_WITNESSES}
    for v, kind in _TABLE.items():
        if kind is Kind.EDGE:
            out[v] = _edge_witness(*sorted(v))
        elif kind is Kind.VERTEX:
            (J,) = v
            out[v] = _vertex_witness(J)
    return out


def sample_stratum_point(rng, vertices, field: Field = COMPLEX) -> FramedPoint:
    """Random point of the stratum: witness moved by a random torus element and a random GL(2)."""
    vertices = frozenset(vertices)
    if vertices == ALL:
        while True:
            X = random_frame(rng, field)
            if plucker_coordinates(X).support() == ALL:
                return X
    W = FramedPoint.from_rows(witness_frames()[vertices], field)
    t = random_torus(rng, field)
    return torus_act(t, W).right_multiply(random_gl2(rng, field))
