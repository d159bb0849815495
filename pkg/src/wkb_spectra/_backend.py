"""Selects the kernel implementation at import time.

WKB_SPECTRA_BACKEND=auto|compiled|python (default auto: compiled when the
extension built, pure numpy otherwise). `compiled` raises if the extension
is missing instead of silently degrading.
"""

from __future__ import annotations

import os

from . import _kernels_py


def get_backend(choice: str | None = None):
    if choice is None:
        choice = os.environ.get("WKB_SPECTRA_BACKEND", "auto")
    choice = choice.strip().lower()
    if choice not in ("auto", "compiled", "python"):
        raise ValueError(
            f"WKB_SPECTRA_BACKEND must be auto, compiled or python, got {choice!r}"
        )
    if choice == "python":
        return _kernels_py
    try:
        from . import _kernels
        return _kernels
    except ImportError:
        if choice == "compiled":
            raise ImportError(
                "compiled kernels requested but the extension is not built; "
                "reinstall the package or set WKB_SPECTRA_BACKEND=python"
            ) from None
        return _kernels_py


kernels = get_backend()


def backend_name() -> str:
    return "compiled" if kernels.COMPILED else "python"
