"""Kernel backend selection.

The hot loops (exact QUBO enumeration, min-over-aux verification, simulated
annealing, embedding DFS) have a compiled Cython core and a pure-Python twin
with identical semantics.  The compiled core is used when importable; set
QUADBED_KERNELS=pure to force the fallback.
"""
import os

from . import pure as _pure

_backend = _pure
_backend_name = "pure"

if os.environ.get("QUADBED_KERNELS", "").lower() != "pure":
    try:
        from . import _core as _compiled

        _backend = _compiled
        _backend_name = "compiled"
    except ImportError:
        pass


def backend_name():
    return _backend_name


def get_backend(name=None):
    """Return a kernel module by name ("pure", "compiled" or None=current)."""
    if name is None:
        return _backend
    if name == "pure":
        return _pure
    if name == "compiled":
        from . import _core

        return _core
    raise ValueError(f"unknown kernel backend {name!r}")


def qubo_min_exact(*args, **kwargs):
    return _backend.qubo_min_exact(*args, **kwargs)


def min_over_aux(*args, **kwargs):
    return _backend.min_over_aux(*args, **kwargs)


def sa_anneal(*args, **kwargs):
    return _backend.sa_anneal(*args, **kwargs)


def embed_dfs(*args, **kwargs):
    return _backend.embed_dfs(*args, **kwargs)
