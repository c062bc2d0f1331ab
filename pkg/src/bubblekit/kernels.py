"""Hot-loop kernels, compiled when available.

The Cython extension ``bubblekit._kernels`` is preferred; the numpy
fallback in ``bubblekit._kernels_py`` is used when the extension is not
built or when ``BUBBLEKIT_PURE_PYTHON=1`` is set. ``BACKEND`` names the
active implementation.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("BUBBLEKIT_PURE_PYTHON") == "1":
    _compiled = None
else:
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None

if _compiled is not None:
    count_standard = _compiled.count_standard
    BACKEND = "cython"
else:
    count_standard = _kernels_py.count_standard
    BACKEND = "python"

count_standard_py = _kernels_py.count_standard
count_standard_compiled = None if _compiled is None else _compiled.count_standard

__all__ = ["count_standard", "count_standard_py", "count_standard_compiled", "BACKEND"]
