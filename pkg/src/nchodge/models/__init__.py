"""Built-in example categories, mutations and the brute-force oracle."""

from nchodge.models.builders import (
    build_model,
    clifford_deformation,
    curved_clifford,
    dual_numbers,
    exterior_algebra,
    field_model,
    matrix_algebra,
    random_dga,
    standard_models,
)
from nchodge.models.models import (
    BuiltModel,
    ModelKind,
    ModelSpec,
    OracleCaps,
    OracleQuantity,
    OracleTable,
)
from nchodge.models.mutations import (
    ConstrainedEntry,
    Constraint,
    Mutation,
    constrained_entries,
    mutations,
)
from nchodge.models.oracle import NaiveHochschild, brute_force_oracle

__all__ = [
    "BuiltModel",
    "ConstrainedEntry",
    "Constraint",
    "ModelKind",
    "ModelSpec",
    "Mutation",
    "NaiveHochschild",
    "OracleCaps",
    "OracleQuantity",
    "OracleTable",
    "brute_force_oracle",
    "build_model",
    "clifford_deformation",
    "constrained_entries",
    "curved_clifford",
    "dual_numbers",
    "exterior_algebra",
    "field_model",
    "matrix_algebra",
    "mutations",
    "random_dga",
    "standard_models",
]
