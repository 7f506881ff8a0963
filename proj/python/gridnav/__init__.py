"""Point-cloud to grid-map conversion and value-learning path planning."""

from gridnav._core import *  # noqa: F401,F403
from gridnav._core import __doc__  # noqa: F401
