"""Numeric kernel backend selection.

The compiled Cython extension is preferred; the pure-Python twin is the
fallback. Set ``FCMKIT_PURE=1`` to force the fallback (used by the benchmark
and by tests that compare the two).
"""

from __future__ import annotations

import os

from . import _pure

if os.environ.get("FCMKIT_PURE"):
    _impl = _pure
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pure

BACKEND: str = _impl.BACKEND

RULE_ADDITIVE: int = _pure.RULE_ADDITIVE
RULE_SOURCE_SUM: int = _pure.RULE_SOURCE_SUM
RULE_RESCALED: int = _pure.RULE_RESCALED

sigmoid = _impl.sigmoid
step = _impl.step
nhl_sweep = _impl.nhl_sweep


def available_backends() -> dict[str, object]:
    """Importable kernel modules keyed by backend name."""
    backends: dict[str, object] = {"pure": _pure}
    try:
        from . import _core

        backends["compiled"] = _core
    except ImportError:
        pass
    return backends
