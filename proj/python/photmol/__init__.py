"""Thermal photon molecules in waveguides: T-matrix, Keldysh components,
bound-state propagation and the resulting two-qubit gate."""

from ._photmol import *  # noqa: F401,F403
from ._photmol import __doc__  # noqa: F401

__version__ = "0.1.0"
