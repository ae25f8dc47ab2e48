"""Crossed homomorphisms, twisted cohomology, and deformation rigidity.

Thin wrapper over the compiled extension; see `xhom._core` docstrings for
the operation-level details.
"""

from xhom._core import (
    EvalError,
    FlowError,
    InputError,
    cohomology_table,
    eval_expr,
    family_residual,
    identify,
    identify_path,
    moser,
    rigidity,
    section4,
    tangent_map,
    verify,
)

__all__ = [
    "EvalError",
    "FlowError",
    "InputError",
    "cohomology_table",
    "eval_expr",
    "family_residual",
    "identify",
    "identify_path",
    "moser",
    "rigidity",
    "section4",
    "tangent_map",
    "verify",
]
