"""Integer matrices: Smith normal form with unimodular transforms, kernels, lattice bases.

Matrices are lists of lists of Python ints; nothing here uses floating point.
"""

from __future__ import annotations


def _copy(M):
    return [list(map(int, r)) for r in M]


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _swap_rows(M, i, j):
    M[i], M[j] = M[j], M[i]


def _swap_cols(M, i, j):
    for r in M:
        r[i], r[j] = r[j], r[i]


def _add_row(M, src, dst, k):
    """row dst += k * row src"""
    if k:
        M[dst] = [a + k * b for a, b in zip(M[dst], M[src])]


def _add_col(M, src, dst, k):
    if k:
        for r in M:
            r[dst] += k * r[src]


def smith_normal_form(M):
    """Return ``(S, U, V)`` with ``U @ M @ V == S`` diagonal, ``d_i | d_{i+1}``, ``d_i >= 0``.

    ``U`` and ``V`` are unimodular.  Empty dimensions are allowed.
    """
    A = _copy(M)
    m = len(A)
    n = len(A[0]) if m else 0
    U = _identity(m)
    V = _identity(n)
    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        _swap_rows(A, t, pi)
        _swap_rows(U, t, pi)
        _swap_cols(A, t, pj)
        _swap_cols(V, t, pj)
        while True:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    _add_row(A, t, i, -q)
                    _add_row(U, t, i, -q)
                    if A[i][t]:
                        done = False
                        _swap_rows(A, t, i)
                        _swap_rows(U, t, i)
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    _add_col(A, t, j, -q)
                    _add_col(V, t, j, -q)
                    if A[t][j]:
                        done = False
                        _swap_cols(A, t, j)
                        _swap_cols(V, t, j)
            if not done:
                continue
            # divisibility: fold a non-multiple into row t and repeat
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % A[t][t]), None)
            if bad is None:
                break
            _add_row(A, bad[0], t, 1)
            _add_row(U, bad[0], t, 1)
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
            U[t] = [-v for v in U[t]]
        t += 1
    return A, U, V


def elementary_divisors(M) -> list[int]:
    S, _, _ = smith_normal_form(M)
    return [S[i][i] for i in range(min(len(S), len(S[0]) if S else 0)) if S[i][i]]


def integer_rank(M) -> int:
    return len(elementary_divisors(M)) if M and M[0] else 0


def integer_kernel(M, ncols: int | None = None) -> list[list[int]]:
    """Basis of ``{v in Z^n : M v = 0}`` (a saturated sublattice)."""
    if not M:
        n = ncols if ncols is not None else 0
        return _identity(n)
    n = len(M[0])
    S, _, V = smith_normal_form(M)
    r = sum(1 for i in range(min(len(S), n)) if S[i][i])
    return [[V[i][j] for i in range(n)] for j in range(r, n)]


def lattice_basis(vectors) -> list[list[int]]:
    """Row-echelon basis (Hermite style, positive pivots) of the lattice spanned by ``vectors``."""
    A = [list(map(int, v)) for v in vectors if any(v)]
    if not A:
        return []
    n = len(A[0])
    row = 0
    for c in range(n):
        while True:
            nz = [i for i in range(row, len(A)) if A[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(A[i][c]))
            A[row], A[p] = A[p], A[row]
            others = [i for i in range(row + 1, len(A)) if A[i][c]]
            if not others:
                break
            for i in others:
                q = A[i][c] // A[row][c]
                A[i] = [a - q * b for a, b in zip(A[i], A[row])]
        if row < len(A) and A[row][c]:
            if A[row][c] < 0:
                A[row] = [-v for v in A[row]]
            for i in range(row):
                q = A[i][c] // A[row][c]
                A[i] = [a - q * b for a, b in zip(A[i], A[row])]
            row += 1
        if row == len(A):
            break
    return [r for r in A[:row] if any(r)]


def matmul(A, B):
    return [[sum(a * b for a, b in zip(r, col)) for col in zip(*B)] for r in A]
