"""Reaction network reduction, exact stationary analysis, and simulation."""

try:
    from . import _core as _impl
except ImportError:  # build-tree layout: the extension sits next to the package root
    import _core as _impl

_names = [_n for _n in dir(_impl) if not _n.startswith("_")]
globals().update({_n: getattr(_impl, _n) for _n in _names})

__all__ = sorted(_names)
