"""Peripheral spectra of generalized operator products.

Thin re-export of the compiled extension. Works both from an installed
wheel (extension inside the package) and from a build tree (extension on
PYTHONPATH next to this package).
"""

try:
    from ._perispec import *  # noqa: F401,F403
    from ._perispec import __version__  # noqa: F401
except ImportError:  # build-tree layout
    from _perispec import *  # noqa: F401,F403
    from _perispec import __version__  # noqa: F401
