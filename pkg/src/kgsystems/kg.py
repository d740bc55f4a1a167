"""Krawtchouk-Griffiths systems: K-condition, Krawtchouk matrices, recurrences.

A system is a generating matrix ``A`` (first column all ones), a probability
vector ``p`` and a vector ``D`` of squared norms with ``A^* diag(p) A =
diag(D)``.  Everything stays inside Q(i); the unitary matrix behind a system
is never formed.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .matrix import ExactMatrix, SingularMatrixError, coefficient_matrix
from .multiindex import DEFAULT_GUARD, IndexTable, enumerate_indices
from .report import Check, IdentityError, Report, common_index, compare, mismatch_positions
from .scalar import ONE, ZERO, GaussianRational, UniPoly, gauss
from .sympow import bar, bar_diagonal, gamma, multinomial_diag


class KConditionError(ValueError):
    pass


class SingularGeneratorError(KConditionError, SingularMatrixError):
    pass


class NonDiagonalGramError(KConditionError):
    pass


class NonPositiveWeightsError(KConditionError):
    pass


@dataclass(frozen=True)
class KGSystem:
    A: ExactMatrix
    p: Tuple[GaussianRational, ...]
    D: Tuple[GaussianRational, ...]

    def __init__(self, A, p: Sequence, D: Sequence):
        A = A if isinstance(A, ExactMatrix) else ExactMatrix(A)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "p", tuple(gauss(x) for x in p))
        object.__setattr__(self, "D", tuple(gauss(x) for x in D))

    @property
    def d(self) -> int:
        return self.A.nrows - 1

    @property
    def P(self) -> ExactMatrix:
        return ExactMatrix.diag(self.p)

    @property
    def Dmat(self) -> ExactMatrix:
        return ExactMatrix.diag(self.D)

    @classmethod
    def from_generator(cls, A) -> KGSystem:
        """Build a system from ``A`` alone, inferring ``p`` and ``D``."""
        A = A if isinstance(A, ExactMatrix) else ExactMatrix(A)
        p, D = infer_weights(A)
        return cls(A, p, D)

    def report(self) -> Report:
        return verify_k_condition(self.A, self.p, self.D)

    def require_valid(self) -> KGSystem:
        rep = self.report()
        if not rep.ok:
            names = ", ".join(c.name for c in rep.failures())
            raise KConditionError(f"K-condition violated: {names}")
        return self


def _positive_real(z: GaussianRational) -> bool:
    return z.is_real() and z.re > 0


def verify_k_condition(A: ExactMatrix, p: Sequence, D: Sequence) -> Report:
    """Each violated invariant of a K-condition triple becomes a failed check."""
    rep = Report()
    p = [gauss(x) for x in p]
    D = [gauss(x) for x in D]
    n = A.nrows
    if not A.is_square() or len(p) != n or len(D) != n:
        rep.add("shape", False, f"A is {A.shape}, len(p)={len(p)}, len(D)={len(D)}")
        return rep
    rep.add("shape", True)

    bad = [i for i in range(n) if A[i, 0] != 1]
    rep.add("first_column_ones", not bad, f"rows {bad} have A[i,0] != 1" if bad else "")

    bad = [i for i, x in enumerate(p) if not _positive_real(x)]
    rep.add("weights_positive", not bad, f"p[{bad}] not positive real" if bad else "")

    total = sum(p, ZERO)
    rep.add("weights_sum_one", total == 1, f"sum p = {total}")

    bad = [i for i, x in enumerate(D) if not _positive_real(x)]
    rep.add("norms_positive", not bad, f"D[{bad}] not positive real" if bad else "")
    rep.add("norms_normalized", D[0] == 1, f"D[0] = {D[0]}")

    gram = A.adjoint() @ ExactMatrix.diag(p) @ A
    off = [(i, j) for i in range(n) for j in range(n) if i != j and gram[i, j]]
    rep.add(
        "gram_diagonal",
        not off,
        f"A*pA has nonzero off-diagonal entry at {off[0]}: {gram[off[0]]}" if off else "",
    )
    c = compare("gram_equals_D", gram, ExactMatrix.diag(D))
    rep.checks.append(c)
    return rep


def infer_weights(A: ExactMatrix) -> Tuple[Tuple[GaussianRational, ...], Tuple[GaussianRational, ...]]:
    """Recover ``(p, D)`` from a generating matrix.

    Row 0 of ``A^-1`` is the weight vector (``A^-1 = D^-1 A^* p`` with unit
    first column and ``D_00 = 1``); ``D`` is then ``A^* p A``.
    """
    if not A.is_square():
        raise KConditionError(f"generating matrix must be square, got {A.shape}")
    bad = [i for i in range(A.nrows) if A[i, 0] != 1]
    if bad:
        raise KConditionError(f"first column must be all ones (rows {bad} differ)")
    try:
        Ainv = A.inverse()
    except SingularMatrixError:
        raise SingularGeneratorError("generating matrix is singular") from None
    p = Ainv.row(0)
    bad = [i for i, x in enumerate(p) if not _positive_real(x)]
    if bad or sum(p, ZERO) != 1:
        raise NonPositiveWeightsError(
            f"inferred weights {[str(x) for x in p]} are not a positive probability vector"
        )
    gram = A.adjoint() @ ExactMatrix.diag(p) @ A
    if not gram.is_diagonal():
        raise NonDiagonalGramError("A*pA is not diagonal; columns are not orthogonal")
    D = gram.diagonal()
    if not all(_positive_real(x) for x in D):
        raise NonDiagonalGramError(f"A*pA has non-positive diagonal {[str(x) for x in D]}")
    return tuple(p), tuple(D)


def quantum_variables(A: ExactMatrix) -> Tuple[List[ExactMatrix], List[ExactMatrix]]:
    """``Lambda_j = diag(column j of A)`` and ``X_j = A^-1 Lambda_j A``."""
    Ainv = A.inverse()
    lambdas = [ExactMatrix.diag(A.column(j)) for j in range(A.ncols)]
    return lambdas, [Ainv @ L @ A for L in lambdas]


@dataclass(frozen=True)
class KrawtchoukDegree:
    system: KGSystem
    N: int
    table: IndexTable
    barA: ExactMatrix
    Phi: ExactMatrix
    B: ExactMatrix
    pbar: ExactMatrix
    Dbar: ExactMatrix
    Lambda: Tuple[ExactMatrix, ...]
    X: Tuple[ExactMatrix, ...]
    gamma_Lambda: Tuple[ExactMatrix, ...]
    gamma_X: Tuple[ExactMatrix, ...]

    @property
    def d(self) -> int:
        return self.system.d

    def rec(self, j: int) -> ExactMatrix:
        return self.gamma_X[j].adjoint()

    def spec(self, j: int) -> ExactMatrix:
        return self.gamma_Lambda[j].adjoint()

    def with_phi(self, Phi: ExactMatrix) -> KrawtchoukDegree:
        """Copy with a replaced Krawtchouk matrix (used for fault injection)."""
        fields = dict(self.__dict__)
        fields["Phi"] = Phi
        return KrawtchoukDegree(**fields)


def krawtchouk(sys: KGSystem, N: int, guard: Optional[int] = DEFAULT_GUARD) -> KrawtchoukDegree:
    sys.require_valid()
    table = enumerate_indices(sys.d, N, guard)
    barA = bar(sys.A, N, guard)
    lambdas, xs = quantum_variables(sys.A)
    return KrawtchoukDegree(
        system=sys,
        N=N,
        table=table,
        barA=barA,
        Phi=barA.adjoint(),
        B=multinomial_diag(sys.d, N, guard),
        pbar=bar_diagonal(sys.p, N, guard),
        Dbar=bar_diagonal(sys.D, N, guard),
        Lambda=tuple(lambdas),
        X=tuple(xs),
        gamma_Lambda=tuple(gamma(L, N, guard) for L in lambdas),
        gamma_X=tuple(gamma(X, N, guard) for X in xs),
    )


def _diag_inverse(M: ExactMatrix) -> ExactMatrix:
    return ExactMatrix.diag([ONE / x for x in M.diagonal()], table=M.table)


def check_orthogonality(kd: KrawtchoukDegree) -> Check:
    lhs = kd.Phi @ kd.B @ kd.pbar @ kd.Phi.adjoint()
    rhs = kd.B @ kd.Dbar
    c = compare("orthogonality", lhs, rhs)
    if not c.passed:
        row = common_index(mismatch_positions(lhs, rhs))
        if row is not None:
            c.detail += f"; suspect row {row} of Phi"
    return c


def check_dual_orthogonality(kd: KrawtchoukDegree) -> Check:
    lhs = kd.Phi.adjoint() @ _diag_inverse(kd.B @ kd.Dbar) @ kd.Phi
    rhs = _diag_inverse(kd.B @ kd.pbar)
    c = compare("dual_orthogonality", lhs, rhs)
    if not c.passed:
        col = common_index(mismatch_positions(lhs, rhs))
        if col is not None:
            c.detail += f"; suspect column {col} of Phi"
    return c


def verify_orthogonality(kd: KrawtchoukDegree) -> Report:
    """Both orthogonality relations, exactly.

    When a single entry of Phi is wrong, the mismatch pattern of the first
    relation singles out its row and that of the second its column.
    """
    rep = Report([check_orthogonality(kd), check_dual_orthogonality(kd)])
    norms = (kd.B @ kd.Dbar).diagonal()
    rep.add(
        "squared_norms_positive",
        all(_positive_real(x) for x in norms),
        "diagonal of B*Dbar",
    )
    return rep


def recurrence_identity(kd: KrawtchoukDegree, j: int) -> Tuple[ExactMatrix, ExactMatrix]:
    """``(Rec, Spec) = (Gamma(X_j)^*, Gamma(Lambda_j)^*)`` with ``Rec Phi = Phi Spec``."""
    Rec, Spec = kd.rec(j), kd.spec(j)
    c = compare(f"recurrence[j={j}]", Rec @ kd.Phi, kd.Phi @ Spec)
    if not c.passed:
        raise IdentityError(c.detail)
    return Rec, Spec


def _identity_poly_matrix(M: ExactMatrix) -> ExactMatrix:
    """``I + v*M`` with polynomial entries."""
    n = M.nrows
    return ExactMatrix(
        [
            [UniPoly((ONE if i == k else ZERO, M[i, k])) for k in range(n)]
            for i in range(n)
        ]
    )


def higher_recurrences(
    sys: KGSystem,
    N: int,
    j: int,
    max_order: int,
    guard: Optional[int] = DEFAULT_GUARD,
    kd: Optional[KrawtchoukDegree] = None,
) -> List[Tuple[ExactMatrix, ExactMatrix]]:
    """``[(Rec_k, Spec_k) for k in 0..max_order]`` from the coefficients of ``v^k``
    in the symmetric powers of ``I + v X_j`` and ``I + v Lambda_j``.

    Each pair is checked against ``Rec_k Phi = Phi Spec_k``.
    """
    if not 0 <= max_order <= N:
        raise ValueError(f"max_order must lie in [0, {N}], got {max_order}")
    if kd is None:
        kd = krawtchouk(sys, N, guard)
    barX = bar(_identity_poly_matrix(kd.X[j]), N, guard)
    barL = bar(_identity_poly_matrix(kd.Lambda[j]), N, guard)
    out = []
    for k in range(max_order + 1):
        Rec = coefficient_matrix(barX, k).adjoint()
        Spec = coefficient_matrix(barL, k).adjoint()
        c = compare(f"recurrence[j={j},k={k}]", Rec @ kd.Phi, kd.Phi @ Spec)
        if not c.passed:
            raise IdentityError(c.detail)
        out.append((Rec, Spec))
    return out


def check_recurrences(kd: KrawtchoukDegree, max_order: Optional[int] = None) -> Report:
    """``Rec_k Phi = Phi Spec_k`` for every variable j and order k <= max_order."""
    rep = Report()
    max_order = kd.N if max_order is None else max_order
    for j in range(kd.d + 1):
        try:
            higher_recurrences(kd.system, kd.N, j, max_order, guard=None, kd=kd)
        except IdentityError as exc:
            rep.add(f"recurrence[j={j}]", False, str(exc))
        else:
            rep.add(f"recurrence[j={j}]", True, f"orders 0..{max_order}")
    return rep


CLASSICAL_A = ((1, 1), (1, -1))


def classical_system() -> KGSystem:
    half = GaussianRational(1) / 2
    return KGSystem(ExactMatrix(CLASSICAL_A), (half, half), (1, 1))


def is_classical(sys: KGSystem) -> bool:
    return sys.A == ExactMatrix(CLASSICAL_A)


@dataclass(frozen=True)
class ClassicalBinomial:
    """The symmetric binomial system in degree N, with its polynomial views."""

    kd: KrawtchoukDegree
    generating_columns: Tuple[UniPoly, ...]

    @property
    def N(self) -> int:
        return self.kd.N

    @property
    def Phi(self) -> ExactMatrix:
        return self.kd.Phi

    def grid(self) -> List[int]:
        """Spectrum points ``x = N - 2j`` for columns j = 0..N."""
        return [self.N - 2 * j for j in range(self.N + 1)]

    def checks(self, Phi: Optional[ExactMatrix] = None) -> Report:
        return check_classical(self.kd if Phi is None else self.kd.with_phi(Phi))


def classical_binomial(N: int, guard: Optional[int] = DEFAULT_GUARD) -> ClassicalBinomial:
    kd = krawtchouk(classical_system(), N, guard)
    one_plus = UniPoly((1, 1))
    one_minus = UniPoly((1, -1))
    cols = tuple(one_plus ** (N - j) * one_minus**j for j in range(N + 1))
    return ClassicalBinomial(kd, cols)


def check_classical(kd: KrawtchoukDegree) -> Report:
    """Involution, symmetry, three-term recurrence and generating functions of
    the symmetric binomial case, evaluated on ``kd.Phi``."""
    rep = Report()
    N, Phi = kd.N, kd.Phi
    rep.checks.append(
        compare("classical_involution", Phi @ Phi, ExactMatrix.identity(N + 1) * (2**N))
    )
    PB = Phi @ kd.B
    rep.checks.append(compare("classical_symmetry", PB.adjoint(), PB))

    # rows K_n at x = N - 2j; K_{-1} = K_{N+1} = 0
    bad = None
    for n in range(N + 1):
        for j in range(N + 1):
            x = N - 2 * j
            lhs = (N - (n - 1)) * Phi[n - 1, j] if n >= 1 else ZERO
            if n + 1 <= N:
                lhs = lhs + (n + 1) * Phi[n + 1, j]
            if lhs != x * Phi[n, j]:
                bad = (n, j)
                break
        if bad:
            break
    rep.add(
        "classical_three_term",
        bad is None,
        f"fails at row n={bad[0]}, x={N - 2 * bad[1]}" if bad else "rows 0..N, all grid points",
    )

    one_plus, one_minus = UniPoly((1, 1)), UniPoly((1, -1))
    bad_col = None
    for j in range(N + 1):
        gf = one_plus ** (N - j) * one_minus**j
        if [gf.coeff(n) for n in range(N + 1)] != list(Phi.column(j)):
            bad_col = j
            break
    rep.add(
        "classical_generating_function",
        bad_col is None,
        f"column {bad_col} differs from (1+v)^(N-j)(1-v)^j" if bad_col is not None else "",
    )
    return rep
