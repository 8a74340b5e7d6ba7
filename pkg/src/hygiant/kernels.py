"""Backend selection: compiled kernels when available, pure Python otherwise.

Set HYGIANT_BACKEND=python to force the fallback (useful for comparison
benchmarks and equivalence tests).
"""

from __future__ import annotations

import os

from . import _kernel_py

if os.environ.get("HYGIANT_BACKEND", "").lower() == "python":
    _impl = _kernel_py
else:
    try:
        from . import _kernel_c as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernel_py

backend_name: str = _impl.BACKEND

splitmix_word = _impl.splitmix_word
splitmix_words = _impl.splitmix_words
unrank_batch = _impl.unrank_batch
rank_batch = _impl.rank_batch
explore = _impl.explore
census_kernel = _impl.census_kernel

STATUS_NEUTRAL = _kernel_py.STATUS_NEUTRAL
STATUS_ACTIVE = _kernel_py.STATUS_ACTIVE
STATUS_EXPLORED = _kernel_py.STATUS_EXPLORED
STATUS_PENDING = _kernel_py.STATUS_PENDING
STATUS_FORBIDDEN = _kernel_py.STATUS_FORBIDDEN

STOP_EXHAUSTED = _kernel_py.STOP_EXHAUSTED
STOP_SIZE = _kernel_py.STOP_SIZE
STOP_BOUNDARY = _kernel_py.STOP_BOUNDARY
STOP_BUDGET = _kernel_py.STOP_BUDGET

MODE_COMPONENT = _kernel_py.MODE_COMPONENT
MODE_TREE = _kernel_py.MODE_TREE

MASK64 = _kernel_py.MASK64
