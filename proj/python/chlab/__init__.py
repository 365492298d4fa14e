"""Peakon laboratory: grid and particle solvers with diagnostics."""

from ._chlab import *  # noqa: F401,F403
from ._chlab import calibration  # noqa: F401
