from .gflow import NotGraphLikeError, find_gflow, gflow_exists, gflow_exists_bruteforce, verify_gflow
from .tensor import (
    OracleBudgetError,
    ScalarFit,
    compare_up_to_scalar,
    equal_up_to_scalar,
    tensor_of_diagram,
)

__all__ = [
    "NotGraphLikeError",
    "OracleBudgetError",
    "ScalarFit",
    "compare_up_to_scalar",
    "equal_up_to_scalar",
    "find_gflow",
    "gflow_exists",
    "gflow_exists_bruteforce",
    "tensor_of_diagram",
    "verify_gflow",
]
