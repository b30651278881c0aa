from core.errors import (
    ConsistencyError,
    DocumentParseError,
    HeffterError,
    InternalConsistencyError,
    OccupancyError,
    ParameterError,
    PreconditionError,
    StructuralError,
    UnknownClassError,
)
from core.models import (
    Axis,
    DiagonalRun,
    FillViolation,
    HeffterArray,
    Route,
    StripResult,
    SumViolation,
    SupportViolation,
    Transversal,
    VerificationReport,
    Verdict,
)
from core.transforms import (
    assemble_blocks,
    empty_diagonal_runs,
    negate,
    overlay,
    permute_rows_cyclic,
    shift,
    transpose,
)
from core.verifier import is_cyclically_tridiagonal, is_primary_transversal, is_shiftable, is_strippable, verify

__all__ = [
    "Axis",
    "ConsistencyError",
    "DiagonalRun",
    "DocumentParseError",
    "FillViolation",
    "HeffterArray",
    "HeffterError",
    "InternalConsistencyError",
    "OccupancyError",
    "ParameterError",
    "PreconditionError",
    "Route",
    "StripResult",
    "StructuralError",
    "SumViolation",
    "SupportViolation",
    "Transversal",
    "UnknownClassError",
    "VerificationReport",
    "Verdict",
    "assemble_blocks",
    "empty_diagonal_runs",
    "is_cyclically_tridiagonal",
    "is_primary_transversal",
    "is_shiftable",
    "is_strippable",
    "negate",
    "overlay",
    "permute_rows_cyclic",
    "shift",
    "transpose",
    "verify",
]
