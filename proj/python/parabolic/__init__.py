"""Parabolic function spaces on a periodic space-time lattice."""

from ._core import *  # noqa: F401,F403
from ._core import Domain, Field, Grid

__all__ = ["Domain", "Field", "Grid"]
