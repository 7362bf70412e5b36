"""Galois group identification."""

from .groups import CycleTypeSet, OrderCapExceeded, cycle_type, group_cycle_types
from .identify import (IMPRIMITIVE, PROVEN, STATISTICAL, AmbiguousAfterSampling, GaloisLabel,
                       find_subfield, frobenius_fingerprint, identify_group, quartic_group,
                       quintic_group)

__all__ = [
    "AmbiguousAfterSampling", "CycleTypeSet", "GaloisLabel", "IMPRIMITIVE", "OrderCapExceeded",
    "PROVEN", "STATISTICAL", "cycle_type", "find_subfield", "frobenius_fingerprint",
    "group_cycle_types", "identify_group", "quartic_group", "quintic_group",
]
