"""Exact computations for differential systems, operators and their series solutions."""
from .exactcore import MatRF, PolyQ, RatFuncQ, RationalQ
from .diffop import DiffOp, WeylPoly
from .powerseries import PowerSeriesQ
from .systems import SystemQ

__all__ = ["DiffOp", "MatRF", "PolyQ", "PowerSeriesQ", "RatFuncQ", "RationalQ", "SystemQ", "WeylPoly"]
