"""Structural intervention distance toolkit.

Distances between causal graphs (SID, SHD, DNE and symmetrized SID),
equivalence-class bounds, brute-force oracles, and seeded random
generators, backed by the C++ core.
"""

try:
    from ._core import *  # noqa: F401,F403  (wheel layout)
    from . import _core as _impl
except ImportError:  # in-tree builds put the extension on PYTHONPATH
    from _core import *  # noqa: F401,F403
    import _core as _impl

__version__ = "1.0.0"
__all__ = [name for name in dir(_impl) if not name.startswith("_")]
