"""Numerical geometry of statistical manifolds, their tangent bundles and
sphere bundles.

The heavy lifting lives in the compiled extension ``statgeom._core``; this
package re-exports its public surface.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
