"""Capital return, IRR, NPV and leverage for periodic growth processes."""

from capret._core import *  # noqa: F401,F403
from capret._core import __doc__  # noqa: F401
