"""Symbolic dynamics and Moebius-disjointness numerics (C++ core)."""

from ._symdyn import (
    CapacityError,
    PreconditionError,
    UndefinedAtPoint,
    atom_mass,
    autocorrelation,
    centralizer_order,
    check,
    fixed_point,
    format_spec,
    generate,
    group_cover,
    kbsz,
    language,
    pattern_parity,
    run,
    sarnak,
    weights,
)

__all__ = [
    "CapacityError",
    "PreconditionError",
    "UndefinedAtPoint",
    "atom_mass",
    "autocorrelation",
    "centralizer_order",
    "check",
    "fixed_point",
    "format_spec",
    "generate",
    "group_cover",
    "kbsz",
    "language",
    "pattern_parity",
    "run",
    "sarnak",
    "weights",
]
