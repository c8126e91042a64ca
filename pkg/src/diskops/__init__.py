"""Composition operators by disk automorphisms on L^2 of the circle and the
Grassmann geometry of their eigenspaces."""
from . import circle, eigenspaces, grassmann, moebius, operators, serialize, verify
from .errors import *  # noqa: F401,F403

__version__ = "0.1.0"
