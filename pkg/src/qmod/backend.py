"""Kernel selection: compiled extension if available, pure Python otherwise.

Set QMOD_PURE=1 in the environment to force the pure-Python kernel
(used by the test suite and the benchmark to exercise both paths).
"""

import os

if os.environ.get("QMOD_PURE"):
    from . import _pycore as _impl
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _pycore as _impl

convolve = _impl.convolve
invert_unit = _impl.invert_unit
BACKEND = _impl.BACKEND
