"""Hot kernels: the compiled extension when built, pure Python otherwise.

Set PUZZLE_PURE_PYTHON=1 to force the fallback.
"""

import os

BACKEND = "python"
if not os.environ.get("PUZZLE_PURE_PYTHON"):
    try:
        from ._ckernels import *  # noqa: F401,F403
        BACKEND = "cython"
    except ImportError:
        pass
if BACKEND == "python":
    from ._pykernels import *  # noqa: F401,F403
