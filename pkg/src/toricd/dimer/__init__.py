"""Dimer models on the two-torus."""

from .matching import characteristic_polygon, perfect_matchings
from .model import (
    BLACK,
    WHITE,
    DimerModel,
    Edge,
    from_json,
    hexagon_model,
    to_json,
    trace_faces,
    validate,
)
from .quiver import Quiver, dual_quiver
from .rcharge import RChargeReport, find_rcharge, rcharge_verify
from .zigzag import ZigZag, isoradial_zigzag_check, zigzags

__all__ = [
    "BLACK",
    "WHITE",
    "DimerModel",
    "Edge",
    "Quiver",
    "RChargeReport",
    "ZigZag",
    "characteristic_polygon",
    "dual_quiver",
    "find_rcharge",
    "from_json",
    "hexagon_model",
    "isoradial_zigzag_check",
    "perfect_matchings",
    "rcharge_verify",
    "to_json",
    "trace_faces",
    "validate",
    "zigzags",
]
