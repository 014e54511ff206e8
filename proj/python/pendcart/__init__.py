"""Matching-control synthesis and simulation for the inverted pendulum cart.

The heavy lifting lives in the compiled extension ``_pendcart``; this package
re-exports its public names. When the extension is built out-of-tree (plain
CMake builds), set ``PENDCART_MODULE_DIR`` to the directory containing it.
"""

import os
import sys

try:
    from ._pendcart import *  # noqa: F401,F403
    from ._pendcart import __doc__ as _core_doc  # noqa: F401
except ImportError:  # pragma: no cover - out-of-tree development builds
    _dir = os.environ.get("PENDCART_MODULE_DIR")
    if not _dir:
        raise
    sys.path.insert(0, _dir)
    from _pendcart import *  # noqa: F401,F403

__all__ = [
    "DesignParams",
    "MatchingLaw",
    "GeometryError",
    "derive_gains",
    "discretize",
    "observer_spectral_radius",
    "run_preset",
    "verify",
]
