"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the pure-Python
module is used.  Setting ``QBOSON_PURE_PYTHON=1`` forces the fallback.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _pykernels

python_backend: ModuleType = _pykernels
compiled_backend: ModuleType | None

try:
    from . import _ckernels as compiled_backend  # type: ignore[no-redef]
except ImportError:
    compiled_backend = None

if compiled_backend is not None and os.environ.get("QBOSON_PURE_PYTHON", "") in ("", "0"):
    active: ModuleType = compiled_backend
else:
    active = _pykernels


def use(name: str) -> ModuleType:
    """Switch the active backend to ``"python"`` or ``"cython"``."""
    global active
    if name == "python":
        active = _pykernels
    elif name == "cython":
        if compiled_backend is None:
            raise RuntimeError("the compiled kernel extension is not built")
        active = compiled_backend
    else:
        raise ValueError(f"unknown backend {name!r}")
    return active


def backend_name() -> str:
    return active.BACKEND


def available() -> list[str]:
    return ["python"] + (["cython"] if compiled_backend is not None else [])


def clear_caches() -> None:
    _pykernels.clear_caches()
    if compiled_backend is not None:
        compiled_backend.clear_caches()
