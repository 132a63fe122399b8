"""Backend selection for the hot kernels.

The compiled extension is used when it imports; ``VECDOM_BACKEND=python``
forces the pure-Python fallback and ``VECDOM_BACKEND=compiled`` makes a
missing extension an error.
"""

from __future__ import annotations

import logging
import os
from types import ModuleType
from typing import Optional

from . import _pykernels

log = logging.getLogger(__name__)

INF = _pykernels.INF

try:
    from . import _kernels as _compiled
except ImportError:  # pragma: no cover - depends on the build
    _compiled = None


def compiled_available() -> bool:
    return _compiled is not None


def get_backend(name: Optional[str] = None) -> ModuleType:
    """Return the kernel module for ``name`` (``auto``, ``compiled`` or ``python``)."""
    name = (name or os.environ.get("VECDOM_BACKEND") or "auto").lower()
    if name == "python":
        return _pykernels
    if name == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built; run `pip install -e .`")
        return _compiled
    if name != "auto":
        raise ValueError(f"unknown backend {name!r}")
    if _compiled is None:
        log.debug("compiled kernels unavailable, using pure Python")
        return _pykernels
    return _compiled


def backend_name(module: ModuleType) -> str:
    return "python" if module is _pykernels else "compiled"
