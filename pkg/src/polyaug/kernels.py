"""Kernel selection: compiled extension when built, pure Python otherwise.

Setting the environment variable ``POLYAUG_PURE=1`` forces the fallback,
which the benchmark uses to compare the two implementations.
"""

from __future__ import annotations

import os

from . import _augkern_py

HAVE_COMPILED = False
_impl = _augkern_py

if not os.environ.get("POLYAUG_PURE"):
    try:
        from . import _augkern as _compiled

        _impl = _compiled
        HAVE_COMPILED = True
    except ImportError:
        pass


def active_kernel_name() -> str:
    return "compiled" if HAVE_COMPILED else "pure-python"


def get_impl(pure: bool = False):
    """Return the kernel module (forced pure when requested)."""
    return _augkern_py if pure else _impl


reduce_row = _impl.reduce_row
insert_row = _impl.insert_row
