"""Backend selection for the closure kernels.

The compiled module is used when it imports; set ``CONLAT_PURE=1`` to force
the pure-Python fallback.  Both backends accept numpy ``int32`` tables.
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("CONLAT_PURE") != "1":
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        _impl = _kernels_py


def _table(t) -> np.ndarray:
    return np.ascontiguousarray(t, dtype=np.int32)


def prepare(table):
    """Convert a table to the form the active backend reads fastest."""
    if _impl is _kernels_py:
        return _rows(table)
    return _table(table)


def _rows(t):
    return t.tolist() if isinstance(t, np.ndarray) else t


def congruence_closure(join, meet, pairs, init=None) -> tuple[int, ...]:
    if _impl is _kernels_py:
        return _kernels_py.congruence_closure(_rows(join), _rows(meet), pairs, init)
    return _impl.congruence_closure(_table(join), _table(meet), pairs, init)


def sublattice_closure(join, meet, gens) -> list[int]:
    if _impl is _kernels_py:
        return _kernels_py.sublattice_closure(_rows(join), _rows(meet), gens)
    return _impl.sublattice_closure(_table(join), _table(meet), list(gens))


def join_closure(join, gens, zero: int) -> list[int]:
    if _impl is _kernels_py:
        return _kernels_py.join_closure(_rows(join), gens, zero)
    return _impl.join_closure(_table(join), list(gens), zero)
