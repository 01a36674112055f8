"""Phase-integral approximations built on the platform function P_s."""

from ._pim import *  # noqa: F401,F403
from ._pim import __doc__  # noqa: F401
