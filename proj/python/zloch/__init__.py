"""Python bindings for the zloch C++ library."""

from ._zloch import *  # noqa: F401,F403
from ._zloch import __doc__  # noqa: F401
