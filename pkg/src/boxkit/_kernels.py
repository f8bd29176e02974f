"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``BOXKIT_PURE_PYTHON=1`` to force the fallback.  The compiled kernels
handle at most 64 vertices and 32 dimensions; larger inputs are routed to
the Python versions transparently.
"""

from __future__ import annotations

import os

from . import _pykernels

YES, NO, UNKNOWN = _pykernels.YES, _pykernels.NO, _pykernels.UNKNOWN

_ckernels = None
if os.environ.get("BOXKIT_PURE_PYTHON", "") in ("", "0"):
    try:
        from . import _ckernels
    except ImportError:  # extension not built
        _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"


def _pick(n, d=0):
    if _ckernels is not None and n <= 64 and d <= _ckernels.MAX_DIMENSION:
        return _ckernels
    return _pykernels


def max_common_neighbors(n, rows, i, lower=-1, first=-1, stop_at=None, backend=None):
    mod = _module(backend) or _pick(n)
    return mod.max_common_neighbors(n, rows, i, lower, first, stop_at)


def box_search(n, rows, d, max_nodes, split_depth=-1, split_index=0, split_count=1, backend=None):
    mod = _module(backend) or _pick(n, d)
    return mod.box_search(n, rows, d, max_nodes, split_depth, split_index, split_count)


def _module(backend):
    if backend is None:
        return None
    if backend == "python":
        return _pykernels
    if backend == "cython":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not available")
        return _ckernels
    raise ValueError(f"unknown backend {backend!r}")


def available_backends():
    return ["python"] + (["cython"] if _ckernels is not None else [])
