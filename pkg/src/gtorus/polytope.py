"""Exact combinatorics of sub-polytopes of the hypersimplex Delta_{4,2}.

A sub-polytope is given by its vertex set, a set of index pairs ``J``.  All
computations are on small integer data and are exact.
"""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .linalg import PAIRS, pair_label
from .moment import delta


def rational_rank(rows) -> int:
    """Rank over Q by fraction-exact Gaussian elimination."""
    m = [[Fraction(v) for v in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                k = m[r][c] / m[rank][c]
                m[r] = [a - k * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def affine_dim(vertices) -> int:
    vs = [delta(J) for J in sorted(vertices)]
    if not vs:
        return -1
    base = vs[0]
    diffs = [[a - b for a, b in zip(v, base)] for v in vs[1:]]
    return rational_rank(diffs) if diffs else 0


# Integer directions wide enough to expose every face of every sub-polytope;
# completeness is cross-checked against an LP face test in the test suite.
_NORMALS = tuple(w for w in product(range(-3, 4), repeat=4) if any(w))


@lru_cache(maxsize=None)
def faces(vertices: frozenset) -> frozenset:
    """All nonempty faces (as vertex frozensets), including the polytope itself."""
    vertices = frozenset(vertices)
    vs = sorted(vertices)
    pts = {J: delta(J) for J in vs}
    out = {vertices}
    for w in _NORMALS:
        vals = {J: sum(a * b for a, b in zip(w, pts[J])) for J in vs}
        top = max(vals.values())
        out.add(frozenset(J for J in vs if vals[J] == top))
    return frozenset(out)


def faces_by_dim(vertices) -> dict[int, list[frozenset]]:
    out: dict[int, list[frozenset]] = {}
    for F in faces(frozenset(vertices)):
        out.setdefault(affine_dim(F), []).append(F)
    return {d: sorted(out[d], key=sorted) for d in sorted(out)}


def facets(vertices) -> list[frozenset]:
    vertices = frozenset(vertices)
    d = affine_dim(vertices)
    return faces_by_dim(vertices).get(d - 1, [])


def edge_degree(vertices, v) -> int:
    """Number of edges of the polytope incident to vertex ``v``."""
    return sum(1 for F in faces_by_dim(vertices).get(1, []) if v in F)


def non_simple_vertices(vertices) -> list:
    """Vertices where more than ``dim`` edges meet (singular points of the toric variety)."""
    d = affine_dim(vertices)
    return [v for v in sorted(vertices) if edge_degree(vertices, v) > d]


# export ----------------------------------------------------------------------------

def _chart3(J) -> tuple[int, int, int]:
    """Affine chart of the hyperplane sum x = 2: drop the last coordinate."""
    return delta(J)[:3]


def _ordered_polygon(face, vertices) -> list:
    """Cyclic order of a 2-face's vertices, oriented away from the polytope centroid."""
    pts = {J: [float(c) for c in _chart3(J)] for J in face}
    cen = [sum(p[k] for p in pts.values()) / len(pts) for k in range(3)]
    allc = [sum(_chart3(J)[k] for J in vertices) / len(vertices) for k in range(3)]
    items = sorted(face)
    a = [pts[items[0]][k] - cen[k] for k in range(3)]
    # normal of the face plane
    normal = None
    for J in items[1:]:
        b = [pts[J][k] - cen[k] for k in range(3)]
        n = _cross(a, b)
        if sum(v * v for v in n) > 1e-12:
            normal = n
            break
    if normal is None:
        return items
    outward = [cen[k] - allc[k] for k in range(3)]
    if sum(n * o for n, o in zip(normal, outward)) < 0:
        normal = [-v for v in normal]
    b_axis = _cross(normal, a)

    def angle(J):
        v = [pts[J][k] - cen[k] for k in range(3)]
        return math.atan2(sum(x * y for x, y in zip(v, b_axis)), sum(x * y for x, y in zip(v, a)))

    return sorted(items, key=angle)


def _cross(a, b):
    return [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]


def export_faces(vertices) -> list[list]:
    """Maximal faces to list in a mesh file: facets for 3-polytopes, the polygon for 2-polytopes."""
    vertices = frozenset(vertices)
    d = affine_dim(vertices)
    if d == 3:
        return [_ordered_polygon(F, vertices) for F in facets(vertices)]
    if d == 2:
        return [_ordered_polygon(vertices, vertices)]
    if d == 1:
        return [sorted(vertices)]
    return []


def to_off(vertices) -> str:
    vs = sorted(vertices)
    idx = {J: k for k, J in enumerate(vs)}
    fs = export_faces(vertices)
    edges = faces_by_dim(vertices).get(1, [])
    lines = ["OFF", f"{len(vs)} {len(fs)} {len(edges)}"]
    lines += [" ".join(str(c) for c in _chart3(J)) for J in vs]
    lines += [" ".join([str(len(F))] + [str(idx[J]) for J in F]) for F in fs]
    return "\n".join(lines) + "\n"


def to_csv(vertices) -> str:
    vs = sorted(vertices)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["record", "id", "label", "x1", "x2", "x3", "x4"])
    for k, J in enumerate(vs):
        w.writerow(["vertex", k, pair_label(J), *delta(J)])
    idx = {J: k for k, J in enumerate(vs)}
    for k, F in enumerate(export_faces(vertices)):
        w.writerow(["face", k, " ".join(pair_label(J) for J in F), *[idx[J] for J in F]])
    return buf.getvalue()


def to_json(vertices, **extra) -> str:
    vs = sorted(vertices)
    idx = {J: k for k, J in enumerate(vs)}
    doc = dict(extra)
    doc.update({
        "vertices": [{"label": pair_label(J), "coords": list(delta(J))} for J in vs],
        "dim": affine_dim(vertices),
        "faces": [[idx[J] for J in F] for F in export_faces(vertices)],
    })
    return json.dumps(doc, indent=2) + "\n"


ALL_VERTICES = frozenset(PAIRS)
