"""Dynamic capacitated arc routing toolkit.

Thin wrapper over the compiled core. Everything trades in text: dcarp-text
instances, route-per-line solutions, key-value scenario configs, csv logs.
"""

from ._core import (
    DcarpError,
    InfeasibleError,
    ParseError,
    canonical_instance,
    convert_egl,
    evaluate,
    instance_info,
    report,
    run_scenario,
    simulate_step,
    solve,
    validate_instance_text,
)

__all__ = [
    "DcarpError",
    "InfeasibleError",
    "ParseError",
    "canonical_instance",
    "convert_egl",
    "evaluate",
    "instance_info",
    "report",
    "run_scenario",
    "simulate_step",
    "solve",
    "validate_instance_text",
]
