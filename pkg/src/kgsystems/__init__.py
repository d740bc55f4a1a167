"""Exact construction and verification of Krawtchouk-Griffiths systems."""
from .kg import (
    ClassicalBinomial,
    KConditionError,
    KGSystem,
    KrawtchoukDegree,
    classical_binomial,
    higher_recurrences,
    infer_weights,
    krawtchouk,
    quantum_variables,
    recurrence_identity,
    verify_k_condition,
    verify_orthogonality,
)
from .matrix import ExactMatrix, SingularMatrixError
from .multiindex import CapacityError, enumerate_indices, multinomial, neighbors
from .reflection import (
    ReflectionError,
    ReflectionSystem,
    kg_from_reflection,
    reflection_from_vector,
    verify_reflection_properties,
)
from .scalar import GaussianRational, UniPoly, gauss
from .sympow import (
    bar,
    bar_incremental,
    gamma,
    multinomial_diag,
    sym_trace,
    transpose_conjugate_induced,
)

__version__ = "0.1.0"
