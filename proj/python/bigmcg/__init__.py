"""Conjugacy-class decision procedures for big mapping class groups.

The heavy lifting lives in the compiled extension; this package re-exports
its functions.
"""

from ._bigmcg import *  # noqa: F401,F403
from ._bigmcg import __doc__  # noqa: F401
