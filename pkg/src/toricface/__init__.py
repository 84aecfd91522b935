"""Exact computations with toric face rings of rational pointed fans."""

from .field import QQ, FieldSpec
from .geometry import Cone, Fan, cone_from_generators, fan_from_maximal

__version__ = "0.1.0"

__all__ = ["QQ", "Cone", "Fan", "FieldSpec", "cone_from_generators", "fan_from_maximal"]
