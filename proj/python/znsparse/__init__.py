"""Sparse recovery on Z_N from restricted frequency data."""

from ._znsparse import *  # noqa: F401,F403
from ._znsparse import __doc__  # noqa: F401

__version__ = "0.1.0"
