"""Symbolic verification of Walker metrics and their canonical null
parallel distributions: curvature tensors, structure algebras, invariant
(Koszul) connections, coframes satisfying the structure equation, and
developing maps."""

from walkerlie._core import (
    EvaluationError,
    ExpressionParseError,
    InternalInconsistencyError,
    PreconditionError,
    SingularMetricError,
    ValidationError,
    WalkerMetric,
    classify_algebra,
    deformation_scan,
    diff,
    evaluate,
    invariant_walker_report,
    is_zero,
    koszul_connection,
    run_check,
    run_check_file,
    simplify,
)

__all__ = [
    "EvaluationError",
    "ExpressionParseError",
    "InternalInconsistencyError",
    "PreconditionError",
    "SingularMetricError",
    "ValidationError",
    "WalkerMetric",
    "classify_algebra",
    "deformation_scan",
    "diff",
    "evaluate",
    "invariant_walker_report",
    "is_zero",
    "koszul_connection",
    "run_check",
    "run_check_file",
    "simplify",
]
