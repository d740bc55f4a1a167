"""Symmetric tensor powers of matrices and the associated Lie-algebra map.

For a square matrix ``A`` of extent d+1, ``bar(A, N)`` is the matrix of
coefficients in ``(Ax)^m = sum_n bar(A)[m, n] x^n`` over degree-N
multi-indices in dictionary order.  ``gamma(g, N)`` is its derivative at the
identity in direction ``g``.

Both constructions are ring-generic: entries may be Gaussian rationals or
polynomials in a formal variable.
"""
from __future__ import annotations

from math import comb
from typing import Optional, Sequence

from .matrix import ExactMatrix
from .multiindex import DEFAULT_GUARD, IndexTable, enumerate_indices, multinomial
from .scalar import ONE, ZERO


def _extent(A: ExactMatrix) -> int:
    if not A.is_square() or A.nrows == 0:
        raise ValueError(f"expected a non-empty square matrix, got shape {A.shape}")
    return A.nrows - 1


def _one_like(A: ExactMatrix):
    # the ring's unit, e.g. a constant polynomial for polynomial entries
    x = A[0, 0]
    return x - x + 1


def bar_incremental(
    A: ExactMatrix, bar_prev: ExactMatrix, guard: Optional[int] = DEFAULT_GUARD
) -> ExactMatrix:
    """Degree-N symmetric power of ``A`` from the degree-(N-1) one.

    Uses ``sum_k m_k P[m-e_k, n] A[k, j] = (n_j + 1) Q[m, n+e_j]`` where P and
    Q are the powers in degrees N-1 and N: for each target column ``c`` take
    its first nonzero coordinate ``j`` and ``n = c - e_j``.
    """
    d = _extent(A)
    prev_table = bar_prev.table or _table_for(d, bar_prev.nrows)
    N = prev_table.N + 1
    table = enumerate_indices(d, N, guard)
    arows = A.rows
    prows = bar_prev.rows
    prank = prev_table.rank

    # per column c: (j, c_j, rank of c - e_j in the previous table)
    col_plan = []
    for c in table:
        j = next(k for k, ck in enumerate(c) if ck)
        n = list(c)
        n[j] -= 1
        col_plan.append((j, c[j], prank(tuple(n))))

    out = []
    for m in table:
        # rows of the previous power reached by removing one factor e_k
        sources = []
        for k, mk in enumerate(m):
            if mk:
                mm = list(m)
                mm[k] -= 1
                sources.append((mk, prows[prank(tuple(mm))], arows[k]))
        row = []
        for j, cj, pn in col_plan:
            acc = ZERO
            for mk, prow, arow in sources:
                p = prow[pn]
                a = arow[j]
                if p and a:
                    acc = acc + mk * p * a
            row.append(acc / cj if cj != 1 else acc)
        out.append(tuple(row))
    return ExactMatrix._wrap(tuple(out), len(table), table)


def bar_product(A: ExactMatrix, N: int, guard: Optional[int] = DEFAULT_GUARD) -> ExactMatrix:
    """Symmetric power built row by row as ``(Ax)^m = (Ax)^(m-e_k) * (Ax)_k``.

    Independent of the division-based recurrence in :func:`bar_incremental`;
    kept as a cross-check.
    """
    d = _extent(A)
    table = enumerate_indices(d, N, guard)
    if N == 0:
        return ExactMatrix._wrap(((_one_like(A),),), 1, table)
    lower = bar_product(A, N - 1, guard)
    ltable = lower.table
    up = [[table.rank(_shift(n, j)) for j in range(d + 1)] for n in ltable]
    out = []
    for m in table:
        k = next(i for i, mi in enumerate(m) if mi)
        mm = list(m)
        mm[k] -= 1
        src = lower.row(ltable.rank(tuple(mm)))
        arow = A.row(k)
        row = [ZERO] * len(table)
        for p, c in enumerate(src):
            if not c:
                continue
            targets = up[p]
            for j, a in enumerate(arow):
                if a:
                    t = targets[j]
                    row[t] = row[t] + c * a
        out.append(tuple(row))
    return ExactMatrix._wrap(tuple(out), len(table), table)


def _shift(n, j):
    out = list(n)
    out[j] += 1
    return tuple(out)


def _table_for(d: int, nu: int) -> IndexTable:
    N = 0
    while True:
        t = enumerate_indices(d, N, guard=None)
        if len(t) == nu:
            return t
        if len(t) > nu:
            raise ValueError(f"{nu} is not a symmetric-power dimension for d={d}")
        N += 1


def bar(
    A: ExactMatrix, N: int, guard: Optional[int] = DEFAULT_GUARD, method: str = "recurrence"
) -> ExactMatrix:
    """The degree-N symmetric power of ``A``.

    ``method`` is ``"recurrence"`` (default, chained :func:`bar_incremental`)
    or ``"product"`` (:func:`bar_product`).
    """
    d = _extent(A)
    if N < 0:
        raise ValueError("degree must be non-negative")
    table = enumerate_indices(d, N, guard)
    if method == "product":
        return bar_product(A, N, guard)
    if method != "recurrence":
        raise ValueError(f"unknown method {method!r}")
    if N == 0:
        return ExactMatrix._wrap(((_one_like(A),),), 1, table)
    cur = A.with_table(enumerate_indices(d, 1, guard=None))
    for _ in range(N - 1):
        cur = bar_incremental(A, cur, guard)
    return cur


def bar_diagonal(values: Sequence, N: int, guard: Optional[int] = DEFAULT_GUARD) -> ExactMatrix:
    """Symmetric power of ``diag(values)``: diagonal of monomials ``values^m``."""
    vals = list(ExactMatrix.diag(values).diagonal())
    table = enumerate_indices(len(vals) - 1, N, guard)
    diag = []
    for m in table:
        acc = ONE
        for v, k in zip(vals, m):
            for _ in range(k):
                acc = acc * v
        diag.append(acc)
    return ExactMatrix.diag(diag, table=table)


def multinomial_diag(d: int, N: int, guard: Optional[int] = DEFAULT_GUARD) -> ExactMatrix:
    table = enumerate_indices(d, N, guard)
    return ExactMatrix.diag([multinomial(m) for m in table], table=table)


def gamma(g: ExactMatrix, N: int, guard: Optional[int] = DEFAULT_GUARD) -> ExactMatrix:
    """Generator of the induced one-parameter group, entry by entry.

    ``gamma(g)[m, n] = sum m_i g[i, j]`` over pairs with ``n = m - e_i + e_j``.
    """
    d = _extent(g)
    table = enumerate_indices(d, N, guard)
    nu = len(table)
    grows = g.rows
    out = []
    for m in table:
        row = [ZERO] * nu
        for i, mi in enumerate(m):
            if not mi:
                continue
            for j, gij in enumerate(grows[i]):
                if not gij:
                    continue
                n = list(m)
                n[i] -= 1
                n[j] += 1
                t = table.rank(tuple(n))
                row[t] = row[t] + mi * gij
        out.append(tuple(row))
    return ExactMatrix._wrap(tuple(out), nu, table)


def sym_trace(A: ExactMatrix, N: int, guard: Optional[int] = DEFAULT_GUARD):
    return bar(A, N, guard).trace()


def gamma_trace_factor(d: int, N: int) -> int:
    """``tr gamma(X) = binom(N+d, d+1) * tr X``."""
    return comb(N + d, d + 1)


def transpose_conjugate_induced(
    A: ExactMatrix, N: int, mode: str = "transpose", guard: Optional[int] = DEFAULT_GUARD
) -> ExactMatrix:
    """``B^-1 bar(A)^T B`` (mode ``"transpose"``) or ``B^-1 bar(A)^* B``
    (mode ``"adjoint"``), which equal ``bar(A^T)`` and ``bar(A^*)``."""
    if mode not in ("transpose", "adjoint"):
        raise ValueError(f"mode must be 'transpose' or 'adjoint', not {mode!r}")
    M = bar(A, N, guard)
    M = M.transpose() if mode == "transpose" else M.adjoint()
    B = [multinomial(m) for m in M.table]
    rows = tuple(
        tuple(x * B[j] / B[i] if x else x for j, x in enumerate(r))
        for i, r in enumerate(M.rows)
    )
    return ExactMatrix._wrap(rows, M.ncols, M.table)
