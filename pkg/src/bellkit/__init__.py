"""Exact desk-scale simulator for entangled-photon and electron correlation
experiments, with exhaustive local-hidden-variable strategy enumeration."""

from . import experiments, lhvt, polarization, spin, tensor

__version__ = "0.1.0"

__all__ = ["experiments", "lhvt", "polarization", "spin", "tensor", "__version__"]
