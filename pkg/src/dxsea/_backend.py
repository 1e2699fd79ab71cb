"""Select the kernel implementation at import time.

The compiled extension is used when it imports cleanly.  Setting the
environment variable ``DXSEA_PURE_PYTHON=1`` forces the fallback, which
the test-suite and the benchmark use to compare the two.
"""

import os

from . import _kernels_py

kernels = _kernels_py
if os.environ.get("DXSEA_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as kernels  # noqa: F811
    except ImportError:
        kernels = _kernels_py

BACKEND = kernels.BACKEND
