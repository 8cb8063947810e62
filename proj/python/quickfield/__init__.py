"""Occupancy-weighted grid potential fields and a cellular-automaton
pedestrian model built on them."""

try:
    from ._quickfield import *  # noqa: F401,F403  (installed package layout)
    from . import _quickfield as _impl
except ImportError:  # in-tree builds put the module next to the package
    from _quickfield import *  # noqa: F401,F403
    import _quickfield as _impl

__all__ = [name for name in dir(_impl) if not name.startswith("_")]
__version__ = "0.1.0"
