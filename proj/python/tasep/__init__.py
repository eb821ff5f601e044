"""Exact stationary probabilities of the two-species TASEP on a ring and with open boundaries."""

from ._tasep import *  # noqa: F401,F403
from ._tasep import TasepError  # noqa: F401
