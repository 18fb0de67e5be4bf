"""Backend selection for the hot loops.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
pure-Python ``_pykernels`` module takes over.  Setting ``GSRGHW_BACKEND=python``
forces the fallback.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def available() -> dict[str, ModuleType]:
    out: dict[str, ModuleType] = {"python": _pykernels}
    if _ckernels is not None:
        out["cython"] = _ckernels
    return out


def get(name: str | None = None) -> ModuleType:
    backends = available()
    if name is None:
        return impl
    if name not in backends:
        raise ValueError(f"kernel backend {name!r} unavailable; have {sorted(backends)}")
    return backends[name]


def _select() -> ModuleType:
    forced = os.environ.get("GSRGHW_BACKEND", "").strip().lower()
    if forced:
        return get(forced)
    return _ckernels if _ckernels is not None else _pykernels


impl = _select()
BACKEND = impl.NAME
