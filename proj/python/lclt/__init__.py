"""Exact and asymptotic point probabilities of simple random walk on Z and Z^2."""

from ._lclt import *  # noqa: F401,F403
from ._lclt import Estimate, RegimeError  # noqa: F401

__version__ = "0.1.0"
