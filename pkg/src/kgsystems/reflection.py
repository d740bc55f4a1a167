"""KG systems generated by unitary reflections ``U = 2 vv^*/(v^*v) - I``.

The square root of ``D`` is supplied directly as a positive rational vector
``s`` (so ``D = s**2``), which keeps every quantity in Q(i).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from .kg import KGSystem, KrawtchoukDegree, krawtchouk, verify_k_condition
from .matrix import ExactMatrix
from .multiindex import DEFAULT_GUARD
from .report import IdentityError, Report, compare
from .scalar import ONE, ZERO, GaussianRational, gauss
from .sympow import bar_diagonal


class ReflectionError(ValueError):
    pass


def reflection_from_vector(v: Sequence) -> ExactMatrix:
    v = [gauss(x) for x in v]
    norm = sum((x.norm() for x in v), 0)
    if not norm:
        raise ReflectionError("cannot reflect in the zero vector")
    n = len(v)
    U = ExactMatrix(
        [
            [2 * v[i] * v[k].conjugate() / norm - (1 if i == k else 0) for k in range(n)]
            for i in range(n)
        ]
    )
    if U.adjoint() != U or U @ U != ExactMatrix.identity(n):
        raise IdentityError("reflection is not a self-adjoint involution")
    return U


@dataclass(frozen=True)
class ReflectionSystem:
    v: Tuple[GaussianRational, ...]
    U: ExactMatrix
    delta: ExactMatrix
    s: ExactMatrix
    sys: KGSystem


def kg_from_reflection(v: Sequence, s: Optional[Sequence] = None) -> ReflectionSystem:
    """``A = delta^-1 U diag(s)`` with ``delta = diag(U[:, 0])``, ``p = |delta|^2``,
    ``D = s^2``."""
    v = tuple(gauss(x) for x in v)
    U = reflection_from_vector(v)
    n = U.nrows
    s = [ONE] * n if s is None else [gauss(x) for x in s]
    if len(s) != n:
        raise ReflectionError(f"scale has {len(s)} entries, expected {n}")
    if not all(x.is_real() and x.re > 0 for x in s):
        raise ReflectionError("scale entries must be positive rationals")
    if s[0] != 1:
        raise ReflectionError("scale[0] must be 1 so that D[0,0] = 1")
    first = U.column(0)
    zeros = [i for i, x in enumerate(first) if not x]
    if zeros:
        raise ReflectionError(f"first column of U vanishes at rows {zeros}; delta is not invertible")

    delta = ExactMatrix.diag(first)
    S = ExactMatrix.diag(s)
    A = ExactMatrix.diag([ONE / x for x in first]) @ U @ S
    p = tuple(GaussianRational(x.norm()) for x in first)
    D = tuple(x * x for x in s)
    if sum(p, ZERO) != 1:
        raise IdentityError("weights from a reflection must sum to one")
    rep = verify_k_condition(A, p, D)
    if not rep.ok:
        raise IdentityError(f"reflection system fails the K-condition: {rep.failures()}")
    return ReflectionSystem(v, U, delta, S, KGSystem(A, p, D))


def involution_matrix(rs: ReflectionSystem, N: int, Phi: Optional[ExactMatrix] = None,
                      guard: Optional[int] = DEFAULT_GUARD) -> ExactMatrix:
    """``bar(delta^* s^-1) Phi``, an involution."""
    if Phi is None:
        Phi = krawtchouk(rs.sys, N, guard).Phi
    w = [x.conjugate() / y for x, y in zip(rs.delta.diagonal(), rs.s.diagonal())]
    return bar_diagonal(w, N, guard) @ Phi


def selfadjoint_matrix(rs: ReflectionSystem, N: int, kd: Optional[KrawtchoukDegree] = None,
                       guard: Optional[int] = DEFAULT_GUARD) -> ExactMatrix:
    """``Phi B bar(delta^*) bar(s)``, a Hermitian matrix."""
    if kd is None:
        kd = krawtchouk(rs.sys, N, guard)
    w = [x.conjugate() * y for x, y in zip(rs.delta.diagonal(), rs.s.diagonal())]
    return kd.Phi @ kd.B @ bar_diagonal(w, N, guard)


def verify_reflection_properties(rs: ReflectionSystem, N: int,
                                 kd: Optional[KrawtchoukDegree] = None,
                                 guard: Optional[int] = DEFAULT_GUARD) -> Report:
    if kd is None:
        kd = krawtchouk(rs.sys, N, guard)
    M1 = involution_matrix(rs, N, kd.Phi, guard)
    M2 = selfadjoint_matrix(rs, N, kd, guard)
    c1 = compare("reflection_involution", M1 @ M1, ExactMatrix.identity(M1.nrows))
    c2 = compare("reflection_selfadjoint", M2.adjoint(), M2)
    return Report([c1, c2])
