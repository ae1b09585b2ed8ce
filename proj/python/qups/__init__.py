"""Lattice point sets in [0,1)^d and certified quasi-uniformity diagnostics."""

from ._qups import *  # noqa: F401,F403
from ._qups import __version__  # noqa: F401
