"""Deterministic simulator and algorithms for resource allocation in
full-duplex wireless networks."""

from ._fdnet import *  # noqa: F401,F403
from ._fdnet import __doc__  # noqa: F401

__version__ = "0.1.0"
