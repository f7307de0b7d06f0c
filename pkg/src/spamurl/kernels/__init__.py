"""Split-search kernel backends.

The compiled extension is used when importable; otherwise the pure-numpy
fallback takes over. Set SPAMURL_KERNEL=python or =cython to force a
backend (cython raises if the extension is missing). Both backends are
drop-in equivalents producing bit-identical splits.
"""

import os

from . import _split_py

GINI = _split_py.GINI
ENTROPY = _split_py.ENTROPY
MSE = _split_py.MSE

_forced = os.environ.get("SPAMURL_KERNEL", "").strip().lower()

if _forced == "python":
    _impl = _split_py
elif _forced == "cython":
    from . import _split_cy as _impl
else:
    try:
        from . import _split_cy as _impl
    except ImportError:
        _impl = _split_py

BACKEND = "cython" if _impl is not _split_py else "python"

best_split = _impl.best_split
partition = _impl.partition
