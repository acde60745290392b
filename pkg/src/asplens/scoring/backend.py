"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ASPLENS_PURE_KERNEL=1 to force the pure kernel even when the extension
built. Both kernels implement the same execute(plan, witness_cap) contract
and must produce identical counts and witnesses.
"""

from __future__ import annotations

import os

from . import _kernel_py

if os.environ.get("ASPLENS_PURE_KERNEL", "") not in ("", "0"):
    _impl = _kernel_py
else:
    try:
        from . import _kernel as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernel_py

BACKEND: str = _impl.NAME
execute = _impl.execute


def available_backends() -> tuple[str, ...]:
    """Names of the kernels importable in this environment."""
    names = [_kernel_py.NAME]
    try:
        from . import _kernel

        names.insert(0, _kernel.NAME)
    except ImportError:
        pass
    return tuple(names)
