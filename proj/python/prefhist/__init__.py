"""Belief update by preferred histories.

Model sets are lists of model indices; bit i of an index is the truth value
of atom p_i.
"""

from ._core import (
    Error,
    OperatorTable,
    builtin_counterexample,
    check,
    cli,
    is_representable,
    models,
    postulates,
    render,
    sweep,
    synthesize,
    u8_witness,
    update,
    update_general,
)

__all__ = [
    "Error",
    "OperatorTable",
    "builtin_counterexample",
    "check",
    "cli",
    "is_representable",
    "models",
    "postulates",
    "render",
    "sweep",
    "synthesize",
    "u8_witness",
    "update",
    "update_general",
]
