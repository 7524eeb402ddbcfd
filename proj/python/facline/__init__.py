"""Truthful facility location on the unit interval.

Thin wrapper around the compiled extension; everything public lives there.
"""

from ._facline import *  # noqa: F401,F403
from ._facline import __doc__  # noqa: F401

__version__ = "0.1.0"
