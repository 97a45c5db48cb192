"""Exact pseudo-Riemannian invariants of metric Lie algebras."""
from .errors import (
    DegenerateCenter,
    DegenerateMetric,
    IrreducibleFactorizationIncomplete,
    NilmetricError,
    NotBiInvariant,
    NotComplement,
    NotSolvable,
    NotTwoStep,
    UnsupportedInput,
)
from .liealg import (
    LinearMap,
    MetricLieAlgebra,
    SplitAlgebra,
    Subspace,
    bracket,
    center,
    is_ad_invariant,
    restrict_metric,
    split,
    split_with,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "DegenerateCenter", "DegenerateMetric", "IrreducibleFactorizationIncomplete",
    "NilmetricError", "NotBiInvariant", "NotComplement", "NotSolvable", "NotTwoStep",
    "UnsupportedInput", "LinearMap", "MetricLieAlgebra", "SplitAlgebra", "Subspace",
    "bracket", "center", "is_ad_invariant", "restrict_metric", "split", "split_with",
    "validate",
]
